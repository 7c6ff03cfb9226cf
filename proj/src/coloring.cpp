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

#include "posw/coloring.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "posw/posw.hpp"

namespace posw {

ColoredTree ColoredTree::blank(unsigned n, unsigned lambda, Bits chi) {
  ColoredTree t;
  t.n = n;
  t.lambda = lambda;
  t.chi = std::move(chi);
  t.nodes.resize(node_count(n) + 1);
  for (const Node& v : labeling_order(n)) {
    for (const Node& p : parents(n, v)) t.edges.emplace_back(p, v);
  }
  return t;
}

PreimageIndex::PreimageIndex(const Database& D) {
  for (const auto& e : D.entries()) by_y_[e.y].insert(e.x);
}

std::optional<Bits> PreimageIndex::smallest(const Bits& y) const {
  auto it = by_y_.find(y);
  if (it == by_y_.end()) return std::nullopt;
  return *it->second.begin();
}

namespace {

struct SubtreeContext {
  const PreimageIndex& index;
  const Bits& chi;
  unsigned n;
  unsigned lambda;
  SubtreeColoring& out;
};

/// Splits x into χ ‖ node ‖ `fields` labels; false on any structural mismatch.
bool parse_fields(const SubtreeContext& c, const Node& v, const Bits& x, std::size_t fields, LabelInputFields& f) {
  if (x.size() != (2 + fields) * c.lambda) return false;
  if (!split_label_input(x, c.lambda, f)) return false;
  return f.chi == c.chi && f.node_field == encode_node(v, c.lambda);
}

void color_rec(const SubtreeContext& c, const Node& v, const Bits& x_v, const Bits& y_v) {
  NodeColoring& self = c.out[v];
  self = {y_v, Color::kRed, x_v};
  LabelInputFields f;
  if (v.depth < c.n) {
    if (!parse_fields(c, v, x_v, 2, f)) return;
    self.color = Color::kGreen;
    for (int b = 0; b < 2; ++b) c.out[v.child(b)] = {f.labels[b], Color::kRed, std::nullopt};
    for (int b = 0; b < 2; ++b) {
      if (auto x = c.index.smallest(f.labels[b])) color_rec(c, v.child(b), *x, f.labels[b]);
    }
    return;
  }
  const auto ps = parents(c.n, v);
  if (!parse_fields(c, v, x_v, ps.size(), f)) return;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    auto it = c.out.find(ps[i]);
    if (it == c.out.end() || !it->second.label || *it->second.label != f.labels[i]) return;
  }
  self.color = Color::kGreen;
}

void require_params(const Bits& chi, unsigned n) {
  if (n == 0 || n + 1 > chi.size()) throw InputError("coloring needs 1 <= n and n + 1 <= lambda");
}

}  // namespace

SubtreeColoring color_subtree(const Database& D, const Bits& chi, const Node& v, const Bits& x_v, const Bits& y_v,
                              unsigned n) {
  require_params(chi, n);
  if (v.depth > n) throw InputError("node deeper than the tree");
  const PreimageIndex index(D);
  SubtreeColoring out;
  color_rec({index, chi, n, static_cast<unsigned>(chi.size()), out}, v, x_v, y_v);
  return out;
}

std::optional<ColoredTree> colored_mt(const Database& D, const Bits& chi, const Bits& y, unsigned n) {
  require_params(chi, n);
  const PreimageIndex index(D);
  const auto x = index.smallest(y);
  if (!x) return std::nullopt;
  SubtreeColoring sub;
  color_rec({index, chi, n, static_cast<unsigned>(chi.size()), sub}, Node::root(), *x, y);
  ColoredTree t = ColoredTree::blank(n, static_cast<unsigned>(chi.size()), chi);
  for (auto& [v, info] : sub) t.at(v) = std::move(info);
  return t;
}

bool gptr(const ColoredTree& tree, const Node& v) {
  if (v.depth != tree.n) throw InputError("gptr is defined on leaves");
  for (unsigned i = 0; i <= v.depth; ++i) {
    if (tree.color(v.prefix(i)) != Color::kGreen) return false;
  }
  return true;
}

std::size_t green_path_leaves(const ColoredTree& tree) {
  std::size_t g = 0;
  for (const Node& u : leaves(tree.n)) g += gptr(tree, u);
  return g;
}

std::size_t count_unlucky_leaves(const ColoredTree& tree) {
  return (std::size_t{1} << tree.n) - green_path_leaves(tree);
}

std::function<bool(const Bits&)> lucky_strings(const Database& D, const Bits& chi, const Bits& y, unsigned n,
                                               unsigned lambda) {
  if (chi.size() != lambda) throw InputError("statement must be lambda bits");
  auto tree = colored_mt(D, chi, y, n);
  if (!tree) return [](const Bits&) { return false; };
  const unsigned k = challenge_count(lambda, n);
  return [t = std::move(*tree), k, n, lambda](const Bits& w) {
    if (w.size() != lambda) return false;
    for (unsigned i = 0; i < k; ++i) {
      if (!gptr(t, {n, w.slice(std::size_t{i} * n, n).to_uint()})) return false;
    }
    return true;
  };
}

double lucky_count(const ColoredTree& tree) {
  const unsigned k = challenge_count(tree.lambda, tree.n);
  return std::pow(static_cast<double>(green_path_leaves(tree)), k) * std::ldexp(1.0, static_cast<int>(tree.lambda - k * tree.n));
}

bool is_lucky_db(const Database& D, std::size_t s, unsigned n, unsigned lambda) {
  if (has_collision(D) || has_walk_of_length(D, s)) return false;
  const Bits marker = encode_node(ChallengeMarker{}, lambda);
  for (const auto& e : D.entries()) {
    if (e.x.size() != 3 * std::size_t{lambda} || e.x.slice(lambda, lambda) != marker) continue;
    const Bits chi = e.x.slice(0, lambda), root = e.x.slice(2 * std::size_t{lambda}, lambda);
    if (n + 1 > lambda) continue;
    if (lucky_strings(D, chi, root, n, lambda)(e.y)) return true;
  }
  return false;
}

std::set<Bits> pre_set(const Database& D, unsigned lambda) {
  std::set<Bits> out;
  for (const auto& e : D.entries()) {
    for (std::size_t p = 0; p + lambda <= e.x.size(); ++p) out.insert(e.x.slice(p, lambda));
  }
  return out;
}

std::size_t red_node_threshold(unsigned n, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  return static_cast<std::size_t>(std::floor((1 - alpha) * static_cast<double>(node_count(n))));
}

RedNodeCheck check_rednodes(const Database& D, const Bits& chi, const Bits& y, unsigned n, double alpha,
                            std::size_t T) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1)");
  RedNodeCheck r;
  r.T = T;
  r.hypotheses_hold = !has_collision(D) && !has_walk_of_length(D, T);
  const auto tree = colored_mt(D, chi, y, n);
  r.unlucky = tree ? count_unlucky_leaves(*tree) : (std::size_t{1} << n);
  if (r.hypotheses_hold) r.passed = static_cast<double>(r.unlucky) >= alpha * static_cast<double>(std::size_t{1} << n);
  return r;
}

namespace {

class TranscriptOracle final : public RandomOracle {
 public:
  TranscriptOracle(const RandomOracle& inner, Database& db) : inner_(inner), db_(db) {}
  unsigned lambda() const override { return inner_.lambda(); }
  Bits query(const Bits& input) const override {
    Bits out = inner_.query(input);
    if (!db_.index_of(input)) db_.insert(input, out);
    return out;
  }

 private:
  const RandomOracle& inner_;
  Database& db_;
};

}  // namespace

Database transcript_database(const RandomOracle& H, unsigned n, const Bits& chi) {
  Database D(H.lambda());
  const TranscriptOracle rec(H, D);
  const auto labels = compute_labels(rec, n, chi);
  challenge_seed(rec, chi, labels.at(Node::root()));
  return D;
}

AuditReport audit(const Database& D, const Bits& chi, const Bits& root, unsigned n, std::size_t s, EdgeRule rule) {
  AuditReport r;
  r.n = n;
  r.lambda = D.lambda();
  r.s = s;
  r.rule = rule;
  if (chi.size() != D.lambda() || root.size() != D.lambda()) throw InputError("chi and root must be lambda bits");
  r.tree = colored_mt(D, chi, root, n);
  r.green_leaves = r.tree ? green_path_leaves(*r.tree) : 0;
  r.collide = has_collision(D);
  r.path_s = has_walk_of_length(D, s, rule);
  r.lucky = is_lucky_db(D, s, n, D.lambda());
  r.cyclic = has_cycle(build_graph(D, rule));
  r.longest_walk = longest_walk(D, rule);
  r.witness = extract_hseq(D, s, rule);
  return r;
}

std::string AuditReport::to_json() const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["lambda"] = lambda;
  j["s"] = s;
  j["edge_rule"] = to_string(rule);
  if (tree) {
    auto& nodes = j["tree"]["nodes"] = nlohmann::ordered_json::array();
    std::vector<Node> order;
    for (std::uint64_t i = 1; i < tree->nodes.size(); ++i) order.push_back(Node::from_heap_index(i));
    for (const Node& v : order) {
      const auto& c = tree->at(v);
      nlohmann::ordered_json e;
      e["node"] = v.to_string();
      e["color"] = c.color == Color::kGreen ? "green" : "red";
      e["label"] = c.label ? nlohmann::ordered_json(c.label->to_hex()) : nlohmann::ordered_json(nullptr);
      nodes.push_back(std::move(e));
    }
    j["tree"]["green_path_leaves"] = green_leaves;
    j["tree"]["unlucky_leaves"] = (std::size_t{1} << n) - green_leaves;
    j["tree"]["all_green"] = std::all_of(order.begin(), order.end(),
                                         [&](const Node& v) { return tree->color(v) == Color::kGreen; });
  } else {
    j["tree"] = nullptr;
  }
  j["collide"] = collide;
  j["path_s"] = path_s;
  j["lucky"] = lucky;
  if (cyclic) {
    j["longest_walk"] = "unbounded";
  } else if (longest_walk) {
    j["longest_walk"] = *longest_walk;
  } else {
    j["longest_walk"] = nullptr;
  }
  if (witness) {
    auto& w = j["witness"];
    w["entries"] = witness->entries;
    auto& xs = w["xs"] = nlohmann::ordered_json::array();
    for (const Bits& x : witness->xs) xs.push_back(x.to_string());
  } else {
    j["witness"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace posw
