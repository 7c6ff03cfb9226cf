// Copyright 2026 The posw-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "posw/hgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

namespace posw {

Database::Database(unsigned lambda, std::vector<Entry> entries) : lambda_(lambda) {
  for (auto& e : entries) insert(std::move(e.x), std::move(e.y));
}

void Database::insert(Bits x, Bits y) {
  if (y.size() != lambda_) throw InputError("database value must be lambda bits");
  if (index_of(x)) throw InputError("duplicate database key " + x.to_string());
  entries_.push_back({std::move(x), std::move(y)});
}

std::optional<std::size_t> Database::index_of(const Bits& x) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].x == x) return i;
  }
  return std::nullopt;
}

std::optional<Bits> Database::lookup(const Bits& x) const {
  if (auto i = index_of(x)) return entries_[*i].y;
  return std::nullopt;
}

std::string Database::to_json() const {
  nlohmann::ordered_json j;
  j["lambda"] = lambda_;
  auto& arr = j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries_) arr.push_back({{"x", e.x.to_string()}, {"y", e.y.to_string()}});
  return j.dump(2);
}

Database Database::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Database D(j.at("lambda").get<unsigned>());
    for (const auto& e : j.at("entries")) {
      D.insert(Bits::from_string(e.at("x").get<std::string>()), Bits::from_string(e.at("y").get<std::string>()));
    }
    return D;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad database JSON: ") + e.what());
  }
}

EdgeRule parse_edge_rule(const std::string& name) {
  if (name == "substring") return EdgeRule::kSubstring;
  if (name == "forward") return EdgeRule::kForward;
  throw InputError("edge rule must be \"substring\" or \"forward\"");
}

std::string to_string(EdgeRule rule) { return rule == EdgeRule::kSubstring ? "substring" : "forward"; }

std::size_t DbGraph::edge_count() const {
  std::size_t c = 0;
  for (const auto& o : out) c += o.size();
  return c;
}

DbGraph build_graph(const Database& D, EdgeRule rule) {
  const std::size_t V = D.size();
  DbGraph g{std::vector<std::vector<std::size_t>>(V), std::vector<std::vector<std::size_t>>(V)};
  for (std::size_t i = 0; i < V; ++i) {
    for (std::size_t j = rule == EdgeRule::kForward ? i + 1 : 0; j < V; ++j) {
      if (substring(D[i].y, D[j].x)) {
        g.out[i].push_back(j);
        g.in[j].push_back(i);
      }
    }
  }
  return g;
}

std::vector<bool> walk_endpoints(const DbGraph& g, std::size_t s) {
  const std::size_t V = g.node_count();
  std::vector<bool> f(V, true), next(V);
  for (std::size_t t = 1; t <= s; ++t) {
    bool any = false;
    for (std::size_t v = 0; v < V; ++v) {
      next[v] = std::any_of(g.in[v].begin(), g.in[v].end(), [&](std::size_t u) { return f[u]; });
      any = any || next[v];
    }
    f.swap(next);
    if (!any) break;
  }
  return f;
}

bool has_walk_of_length(const Database& D, std::size_t s, EdgeRule rule) {
  const auto f = walk_endpoints(build_graph(D, rule), s);
  return std::find(f.begin(), f.end(), true) != f.end();
}

bool has_cycle(const DbGraph& g) {
  // Kahn: a cycle exists iff some node never reaches in-degree zero.
  const std::size_t V = g.node_count();
  std::vector<std::size_t> indeg(V), stack;
  for (std::size_t v = 0; v < V; ++v) {
    indeg[v] = g.in[v].size();
    if (indeg[v] == 0) stack.push_back(v);
  }
  std::size_t seen = 0;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    ++seen;
    for (std::size_t w : g.out[u]) {
      if (--indeg[w] == 0) stack.push_back(w);
    }
  }
  return seen != V;
}

std::optional<std::size_t> longest_walk(const Database& D, EdgeRule rule) {
  const DbGraph g = build_graph(D, rule);
  if (g.node_count() == 0 || has_cycle(g)) return std::nullopt;
  // Acyclic: at most V-1 edges, so iterate the DP until no endpoint survives.
  std::size_t best = 0;
  std::vector<bool> f(g.node_count(), true);
  for (std::size_t t = 1; t < g.node_count(); ++t) {
    std::vector<bool> next(g.node_count());
    bool any = false;
    for (std::size_t v = 0; v < g.node_count(); ++v) {
      next[v] = std::any_of(g.in[v].begin(), g.in[v].end(), [&](std::size_t u) { return f[u]; });
      any = any || next[v];
    }
    if (!any) break;
    best = t;
    f.swap(next);
  }
  return best;
}

std::optional<HSequence> extract_hseq(const Database& D, std::size_t s, EdgeRule rule) {
  const DbGraph g = build_graph(D, rule);
  const std::size_t V = g.node_count();
  if (V == 0) return std::nullopt;
  std::vector<std::vector<bool>> f{std::vector<bool>(V, true)};
  for (std::size_t t = 1; t <= s; ++t) {
    std::vector<bool> next(V);
    bool any = false;
    for (std::size_t v = 0; v < V; ++v) {
      next[v] = std::any_of(g.in[v].begin(), g.in[v].end(), [&](std::size_t u) { return f.back()[u]; });
      any = any || next[v];
    }
    if (!any) return std::nullopt;
    f.push_back(std::move(next));
  }
  auto it = std::find(f[s].begin(), f[s].end(), true);
  if (it == f[s].end()) return std::nullopt;
  std::vector<std::size_t> rev{static_cast<std::size_t>(it - f[s].begin())};
  for (std::size_t t = s; t >= 1; --t) {
    std::size_t best = V;
    for (std::size_t u : g.in[rev.back()]) {
      if (f[t - 1][u]) best = std::min(best, u);
    }
    rev.push_back(best);
  }
  HSequence h;
  h.entries.assign(rev.rbegin(), rev.rend());
  for (std::size_t e : h.entries) h.xs.push_back(D[e].x);
  return h;
}

bool has_collision(const Database& D) {
  std::map<Bits, const Bits*> seen;
  for (const auto& e : D.entries()) {
    auto [it, fresh] = seen.emplace(e.y, &e.x);
    if (!fresh && *it->second != e.x) return true;
  }
  return false;
}

namespace {

bool among_first(std::span<const Bits> queries, std::size_t i, const Bits& x) {
  return std::find(queries.begin(), queries.begin() + static_cast<std::ptrdiff_t>(i), x) !=
         queries.begin() + static_cast<std::ptrdiff_t>(i);
}

bool path_s_i_on(const Database& D, const std::vector<bool>& ends, std::span<const Bits> queries, std::size_t i) {
  for (std::size_t v = 0; v < D.size(); ++v) {
    if (ends[v] && !among_first(queries, i, D[v].x)) return true;
  }
  return false;
}

bool contain_on(const Database& D, const std::vector<bool>& ends, std::span<const Bits> queries, std::size_t i) {
  const auto idx = D.index_of(queries[i - 1]);
  if (!idx || !ends[*idx]) return false;
  const Bits& y = D[*idx].y;
  return std::any_of(queries.begin(), queries.end(), [&](const Bits& x) { return substring(y, x); });
}

void check_index(std::span<const Bits> queries, std::size_t i, bool one_based) {
  if (i > queries.size() || (one_based && i == 0)) throw InputError("query index out of range");
}

}  // namespace

bool path_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i, EdgeRule rule) {
  check_index(queries, i, false);
  return path_s_i_on(D, walk_endpoints(build_graph(D, rule), s), queries, i);
}

bool contain_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i, EdgeRule rule) {
  check_index(queries, i, true);
  return contain_on(D, walk_endpoints(build_graph(D, rule), s), queries, i);
}

bool bad_s_i(const Database& D, std::span<const Bits> queries, std::size_t s, std::size_t i, EdgeRule rule) {
  check_index(queries, i, false);
  const auto ends = walk_endpoints(build_graph(D, rule), s);
  if (i == 0) return std::find(ends.begin(), ends.end(), true) != ends.end();
  if (path_s_i_on(D, ends, queries, i)) return true;
  for (std::size_t j = 1; j <= i; ++j) {
    if (contain_on(D, ends, queries, j)) return true;
  }
  return false;
}

namespace {

bool verify_links(std::span<const Bits> seq, const std::function<std::optional<Bits>(const Bits&)>& H) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const auto y = H(seq[i - 1]);
    if (!y || !substring(*y, seq[i])) return false;
  }
  return true;
}

}  // namespace

bool verify_hseq(const Database& D, std::span<const Bits> seq) {
  return verify_links(seq, [&](const Bits& x) { return D.lookup(x); });
}

bool verify_hseq(const RandomOracle& H, std::span<const Bits> seq) {
  return verify_links(seq, [&](const Bits& x) -> std::optional<Bits> {
    try {
      return H.query(x);
    } catch (const InputError&) {
      return std::nullopt;
    }
  });
}

}  // namespace posw
