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

#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace posw::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kVerifyFailed = 3,
  kResourceCap = 4,
};

/// Environment variable naming the default oracle config file.
inline constexpr const char* kConfigEnv = "POSW_CONFIG";

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs one command. `args` excludes the program name. Machine-readable results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace posw::cli
