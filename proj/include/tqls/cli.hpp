// Copyright 2026 The tqls Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqls/analysis.hpp"
#include "tqls/genfun.hpp"

namespace tqls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

extern const char* const kSymbolGrammar;
extern const char* const kRhsGrammar;
extern const char* const kNListGrammar;

/// Malformed argument text; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

GeneratingFunction parse_symbol(const std::string& text);
RhsSpec parse_rhs(const std::string& text);
std::vector<Eigen::Index> parse_n_list(const std::string& text);

/// `args` excludes the program name. Reports go to `out` (or --out), usage
/// messages and JSON error objects to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tqls::cli
