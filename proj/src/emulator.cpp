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
#include "tqls/emulator.hpp"

#include <cfenv>
#include <cmath>
#include <numbers>

namespace tqls {
namespace {

constexpr double kNormTolerance = 1e-12;
constexpr Eigen::Index kJsonStateLimit = 4096;

int log2_exact(Eigen::Index n) {
  int q = 0;
  while ((Eigen::Index{1} << q) < n) ++q;
  return q;
}

// Coefficients t_{-(n-1)}..t_{n-1} from a list t_{-r}..t_r, truncated or
// zero padded.
ComplexVector fit_sequence(const ComplexVector& t, Eigen::Index n) {
  if (t.size() % 2 == 0) throw DimensionError("coefficient list must have odd length");
  const Eigen::Index r = t.size() / 2;
  ComplexVector out = ComplexVector::Zero(2 * n - 1);
  for (Eigen::Index k = -std::min(r, n - 1); k <= std::min(r, n - 1); ++k) {
    out[k + n - 1] = t[k + r];
  }
  return out;
}

ComplexVector wiener_sequence(const SymbolSource& source, Eigen::Index n) {
  if (const auto* f = std::get_if<GeneratingFunction>(&source)) return fourier_coefficients(*f, n);
  return fit_sequence(std::get<ComplexVector>(source), n);
}

void quantize(RealVector& values, double full_scale, int bits) {
  if (bits < 0) throw DomainError("value register bits must be >= 0");
  if (bits == 0) return;
  const double unit = std::ldexp(full_scale, -bits);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  for (double& v : values) v = std::nearbyint(v / unit) * unit;
  std::fesetround(saved);
}

// The circuit applies diag(1/f_j) between F and F^dagger; that inverts the
// associated circulant only when the spectrum is mirror symmetric.
void require_mirror_symmetric(const RealVector& values) {
  const Eigen::Index n = values.size();
  const double tol = 1e-12 * values.cwiseAbs().maxCoeff();
  for (Eigen::Index j = 1; j < n; ++j) {
    if (std::abs(values[j] - values[n - j]) > tol) {
      throw DomainError("emulator requires f(2 pi j/n) = f(2 pi (n-j)/n) (real coefficients)");
    }
  }
}

void check_norm(const ComplexVector& v, std::vector<double>& norms) {
  const double nrm = v.norm();
  norms.push_back(nrm);
  if (std::abs(nrm - 1.0) > kNormTolerance) {
    throw DomainError("emulator: state lost normalization");
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes)
    : amplitudes_(std::move(amplitudes)), qubits_(0) {
  if (!is_power_of_two(amplitudes_.size())) {
    throw DimensionError("StateVector: length must be a power of two");
  }
  require_finite(amplitudes_, "StateVector");
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTolerance) {
    throw DomainError("StateVector: amplitudes must have unit norm");
  }
  qubits_ = log2_exact(amplitudes_.size());
}

StateVector prepare_state(const ComplexVector& b) {
  if (!is_power_of_two(b.size())) throw DimensionError("prepare_state: length must be a power of two");
  require_finite(b, "prepare_state");
  const double nrm = b.norm();
  if (nrm == 0.0) throw DomainError("prepare_state: zero vector");
  return StateVector(b / nrm);
}

std::string to_string(EmulationMode mode) {
  return mode == EmulationMode::kSymbol ? "symbol" : "wiener";
}

OracleTable oracle_table(const SymbolSource& source, Eigen::Index n, int bits, EmulationMode mode) {
  if (n < 1) throw DimensionError("oracle_values: n must be positive");
  OracleTable table;
  if (mode == EmulationMode::kSymbol) {
    const auto* f = std::get_if<GeneratingFunction>(&source);
    if (!f) throw DomainError("symbol mode needs a generating function");
    table.values = sample_grid(*f, n);
    table.full_scale = f->f_max();
    table.default_m = f->extrema_exact() ? f->f_min() : 0.99 * f->f_min();
  } else {
    const ComplexVector t = wiener_sequence(source, n);
    const CirculantMatrix c = circulant_from_sequence(t);
    const double peak = truncated_symbol(t).f_max();
    table.values = c.eigenvalues().real() / peak;
    table.full_scale = 1.0;
    table.default_m = table.values.minCoeff();
  }
  quantize(table.values, table.full_scale, bits);
  if (!(table.values.minCoeff() > 0.0)) {
    throw SingularError("oracle value <= 0 after rounding to the value register");
  }
  table.default_m = std::min(table.default_m, table.values.minCoeff());
  return table;
}

RealVector oracle_values(const SymbolSource& source, Eigen::Index n, int bits, EmulationMode mode) {
  return oracle_table(source, n, bits, mode).values;
}

double post_selection_probability(const ComplexVector& b, const RealVector& values, double m) {
  if (b.size() != values.size()) throw DimensionError("post_selection_probability: size mismatch");
  const double nrm = b.norm();
  if (nrm == 0.0) throw DomainError("post_selection_probability: zero vector");
  const ComplexVector spectral = unitary_dft(b / nrm);
  double p = 0.0;
  for (Eigen::Index j = 0; j < b.size(); ++j) p += std::norm(spectral[j]) * (m * m) / (values[j] * values[j]);
  return p;
}

long gate_count_model(int q) {
  if (q < 1) throw DomainError("gate_count_model: q must be >= 1");
  const long ql = q;
  return 2 * (ql * (ql + 1) / 2 + ql / 2) + 3;
}

EmulationReport run_pipeline(const ComplexVector& b, const SymbolSource& source,
                             const EmulationConfig& config) {
  std::vector<double> norms;
  const StateVector prepared = prepare_state(b);
  const Eigen::Index n = prepared.size();

  const OracleTable table = oracle_table(source, n, config.value_register_bits, config.mode);
  const RealVector& f = table.values;
  require_mirror_symmetric(f);
  const double m = config.m.value_or(table.default_m);
  if (!(m > 0.0)) throw RotationConstantError("rotation constant m must be positive");
  if (m > f.minCoeff() * (1.0 + 1e-12)) {
    throw RotationConstantError("rotation constant m exceeds min_j f_j");
  }

  check_norm(prepared.amplitudes(), norms);
  // Step 1.
  const ComplexVector spectral = unitary_dft(prepared.amplitudes());
  check_norm(spectral, norms);

  // Steps 2-3: amplitudes on the |1> (good) and |0> (bad) rotation branches.
  ComplexVector good(n);
  ComplexVector bad(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double ratio = std::min(1.0, m / f[j]);
    good[j] = spectral[j] * ratio;
    bad[j] = spectral[j] * std::sqrt(1.0 - ratio * ratio);
  }
  const double p = good.squaredNorm();
  const double theta = std::asin(std::sqrt(std::min(1.0, p)));

  std::optional<double> amplified;
  if (config.grover_iterations) {
    if (*config.grover_iterations < 0) throw DomainError("grover iterations must be >= 0");
    // Q = (2|psi0><psi0| - I) S_good, with S_good flipping the good branch.
    const ComplexVector good0 = good;
    const ComplexVector bad0 = bad;
    for (int k = 0; k < *config.grover_iterations; ++k) {
      good = -good;
      const std::complex<double> overlap = good0.dot(good) + bad0.dot(bad);
      good = 2.0 * overlap * good0 - good;
      bad = 2.0 * overlap * bad0 - bad;
    }
    amplified = good.squaredNorm();
  }
  // Step 4: post-select the good branch.
  if (good.norm() == 0.0) throw DomainError("emulator: good branch vanished after amplification");
  const ComplexVector selected = good / good.norm();
  check_norm(selected, norms);
  // Step 5.
  const ComplexVector solution = unitary_idft(selected);
  check_norm(solution, norms);

  CirculantMatrix classical_matrix =
      config.mode == EmulationMode::kSymbol
          ? associated_circulant(std::get<GeneratingFunction>(source), n)
          : circulant_from_sequence(wiener_sequence(source, n));
  ComplexVector classical = circulant_solve(classical_matrix, prepared.amplitudes());
  classical /= classical.norm();
  const std::complex<double> overlap = classical.dot(solution);
  const double magnitude = std::abs(overlap);
  const std::complex<double> phase = magnitude > 0.0 ? overlap / magnitude : 1.0;

  EmulationReport report{
      .n = n,
      .q = prepared.qubits(),
      .mode = config.mode,
      .m = m,
      .bits = config.value_register_bits,
      .output_state = StateVector(solution),
      .success_probability = p,
      .amplified_probability = amplified,
      .expected_repeats = std::ceil(std::numbers::pi / (4.0 * theta)),
      .grover_iterations = config.grover_iterations,
      .gate_count = gate_count_model(std::max(1, prepared.qubits())),
      .fidelity_vs_classical = std::min(1.0, magnitude),
      .infidelity = 0.5 * (solution - phase * classical).squaredNorm(),
      .stage_norms = std::move(norms),
  };
  return report;
}

nlohmann::ordered_json to_json(const EmulationReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["q"] = report.q;
  j["mode"] = to_string(report.mode);
  j["m"] = report.m;
  j["bits"] = report.bits;
  j["success_probability"] = report.success_probability;
  j["expected_repeats"] = report.expected_repeats;
  j["grover_iterations"] = report.grover_iterations ? nlohmann::ordered_json(*report.grover_iterations)
                                                    : nlohmann::ordered_json(nullptr);
  if (report.amplified_probability) j["amplified_probability"] = *report.amplified_probability;
  j["gate_count"] = report.gate_count;
  j["fidelity_vs_classical"] = report.fidelity_vs_classical;
  if (report.n <= kJsonStateLimit) {
    nlohmann::ordered_json state = nlohmann::ordered_json::array();
    for (const auto& a : report.output_state.amplitudes()) state.push_back({a.real(), a.imag()});
    j["output_state"] = std::move(state);
  }
  return j;
}

}  // namespace tqls
