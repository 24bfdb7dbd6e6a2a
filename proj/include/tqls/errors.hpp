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

#include <stdexcept>
#include <string>

namespace tqls {

/// Base of every numerical/domain failure raised by the library. `code()` is a
/// stable short identifier used in machine-readable error output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(detail), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& detail) : Error("domain", detail) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& detail)
      : Error("dimension", detail) {}
};

struct SingularError : Error {
  explicit SingularError(const std::string& detail)
      : Error("singular", detail) {}
};

struct CapExceededError : Error {
  explicit CapExceededError(const std::string& detail)
      : Error("cap_exceeded", detail) {}
};

// Raised when an iterative eigenvalue search stops without meeting tolerance;
// carries the best bracket found.
struct ConvergenceError : Error {
  ConvergenceError(const std::string& detail, double lo, double hi)
      : Error("no_convergence", detail), lower(lo), upper(hi) {}
  double lower;
  double upper;
};

struct RotationConstantError : Error {
  explicit RotationConstantError(const std::string& detail)
      : Error("m_too_large", detail) {}
};

}  // namespace tqls
