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

/**
 * @file
 * Statevector emulation of the circulant-inversion circuit:
 *   QFT |b>  ->  oracle |f_j>  ->  controlled rotation by m / f_j
 *   -> post-selection (amplitude amplification)  ->  inverse QFT.
 *
 * The value register and the rotation ancilla are never materialized; the
 * rotation is applied as a good/bad branch split of the n amplitudes and
 * post-selection is projection plus renormalization.
 */
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tqls/genfun.hpp"
#include "tqls/structured.hpp"

namespace tqls {

class StateVector {
 public:
  /// Requires a power-of-two length and unit norm (within 1e-12).
  explicit StateVector(ComplexVector amplitudes);

  const ComplexVector& amplitudes() const { return amplitudes_; }
  Eigen::Index size() const { return amplitudes_.size(); }
  int qubits() const { return qubits_; }

 private:
  ComplexVector amplitudes_;
  int qubits_;
};

/// b / ||b||; b must be nonzero with power-of-two length.
StateVector prepare_state(const ComplexVector& b);

enum class EmulationMode { kSymbol, kWiener };

std::string to_string(EmulationMode mode);

struct EmulationConfig {
  /// Rotation constant; defaults to f_min for catalog symbols, 0.99 of the
  /// estimated f_min otherwise, and the smallest rescaled value in Wiener mode.
  std::optional<double> m;
  int value_register_bits = 0;  // 0 = exact oracle values
  /// Unset: analytic amplitude-amplification accounting. Set: that many
  /// explicit Grover reflection pairs are applied.
  std::optional<int> grover_iterations;
  EmulationMode mode = EmulationMode::kSymbol;
};

/// Either a symbol, or (Wiener mode) a Hermitian coefficient list t_{-r}..t_r.
using SymbolSource = std::variant<GeneratingFunction, ComplexVector>;

struct OracleTable {
  RealVector values;
  double full_scale;    // quantization unit is full_scale * 2^-bits
  double default_m;
};

/// Values loaded into the oracle register. Symbol mode: f(2 pi j / n).
/// Wiener mode: f_hat_n(2 pi j / n) / max f_hat_n. Each value is then rounded
/// to nearest (ties to even) in units of full_scale * 2^-bits.
OracleTable oracle_table(const SymbolSource& source, Eigen::Index n, int bits, EmulationMode mode);
RealVector oracle_values(const SymbolSource& source, Eigen::Index n, int bits,
                         EmulationMode mode = EmulationMode::kSymbol);

/// sum_j m^2 |(F b_hat)_j|^2 / f_j^2 for b_hat = b / ||b||; any length.
double post_selection_probability(const ComplexVector& b, const RealVector& values, double m);

/// 2 (q(q+1)/2 + floor(q/2)) + 3: two QFTs plus oracle, uncompute, rotation.
long gate_count_model(int q);

struct EmulationReport {
  Eigen::Index n;
  int q;
  EmulationMode mode;
  double m;
  int bits;
  StateVector output_state;
  double success_probability;
  /// sin^2((2k+1) theta) after k explicit reflections; unset in analytic mode.
  std::optional<double> amplified_probability;
  double expected_repeats;
  std::optional<int> grover_iterations;
  long gate_count;
  double fidelity_vs_classical;
  /// 1 - fidelity computed as ||x - e^{i phi} y||^2 / 2 (no cancellation).
  double infidelity;
  /// Norms after state preparation, QFT, post-selection, inverse QFT.
  std::vector<double> stage_norms;
};

EmulationReport run_pipeline(const ComplexVector& b, const SymbolSource& source,
                             const EmulationConfig& config);

nlohmann::ordered_json to_json(const EmulationReport& report);

}  // namespace tqls
