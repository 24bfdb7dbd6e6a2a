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
 * Convergence experiments for the circulant substitution T_n(f) -> C_n(f):
 * solution errors against the dense Toeplitz solve, the sampling/wrap split of
 * the Frobenius distance, rate checks, and eigenvalue matching.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tqls/structured.hpp"

namespace tqls {

/// splitmix64: 64-bit state advanced by 0x9e3779b97f4a7c15, output scrambled
/// by two xor-shift-multiply rounds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1): top 53 bits, offset by half an ulp.
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

enum class RhsKind { kBasis, kRandom, kBanded, kFile };

struct RhsSpec {
  RhsKind kind = RhsKind::kRandom;
  long index = 0;           // basis
  std::uint64_t seed = 0;   // random
  long half_width = 0;      // banded: window of 2L+1 entries
  std::string path;         // file

  std::string label() const;
};

ComplexVector basis_rhs(long index, Eigen::Index n);
/// Complex standard normal entries (Box-Muller on SplitMix64), normalized.
ComplexVector random_rhs(std::uint64_t seed, Eigen::Index n);
/// 2L+1 entries of 1/sqrt(2L+1) centred at floor(n/2).
ComplexVector banded_rhs(long half_width, Eigen::Index n);
/// One complex per line as "re im"; '#' starts a comment.
ComplexVector read_rhs_file(const std::string& path);

ComplexVector make_rhs(const RhsSpec& spec, Eigen::Index n);

struct ConvergenceRecord {
  Eigen::Index n = 0;
  double epsilon = 0.0;
  double kappa = 0.0;
  double vec_err = 0.0;
  double state_err = 0.0;
  double bound_vec = 0.0;
  double bound_state = 0.0;
  double success_probability = 0.0;
  std::string rhs_kind;
  std::uint64_t seed = 0;
  std::string kappa_method;
  double kappa_proxy = 0.0;
  /// Set when this row failed; the numeric fields are then NaN.
  std::optional<std::string> error;

  /// epsilon * kappa < 1, the regime where the bounds are not vacuous.
  bool bound_applies() const { return !error && epsilon * kappa < 1.0; }
};

/// x = T^{-1} b (dense), x* = C^{-1} b (FFT), both error measures and bounds.
ConvergenceRecord solution_errors(const GeneratingFunction& f, Eigen::Index n,
                                  const ComplexVector& b);

struct FrobeniusDecomposition {
  double sampling_term;    // ||C_n(f) - C_n(f_hat_n)||_F / ||T_n||_F
  double wrap_term;        // ||C_n(f_hat_n) - T_n||_F / ||T_n||_F
  double wrap_closed_form; // sqrt(sum |k| |t_k|^2) / ||T_n||_F
  double total_rel;        // ||C_n(f) - T_n||_F / ||T_n||_F
  double theorem_bound;    // sqrt(N / (n - N)), +inf when n <= N
  long effective_radius;   // N
};

FrobeniusDecomposition decompose_frobenius_error(const GeneratingFunction& f, Eigen::Index n);

/// Smallest N with sum_{|k| > N} |t_k|^2 <= 1e-12 t_0^2 (exact radius for
/// trigonometric polynomials).
long effective_radius(const GeneratingFunction& f);

std::vector<ConvergenceRecord> convergence_sweep(const GeneratingFunction& f,
                                                 const std::vector<Eigen::Index>& n_list,
                                                 const RhsSpec& rhs);

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records);

enum class RateModel { kLnnLognOverN, kInvSqrtN, kInvN };

std::string to_string(RateModel model);
double rate_model(RateModel model, double n);

inline constexpr double kRateTolerance = 2.0;

struct RateFit {
  std::vector<Eigen::Index> n_values;
  std::vector<double> errors;
  RateModel model = RateModel::kInvN;
  /// error_i / model(n_i); errors at or below their resolution floor count as 0.
  std::vector<double> normalized_constants;
  std::vector<double> resolution_floor;
  bool bounded = false;
  double tolerance_factor = kRateTolerance;
};

/// Bounded iff max of the last half of the normalized constants is within
/// tolerance_factor of their median.
RateFit fit_rate(std::vector<Eigen::Index> n_values, std::vector<double> errors, RateModel model,
                 std::vector<double> floors = {}, double tolerance_factor = kRateTolerance);

/// Round-off level of an error measurement at size n and condition kappa.
double resolution_floor(Eigen::Index n, double kappa);

inline constexpr std::uint64_t kDefaultSeed = 7;

/// state_err of the p-series symbol under a fixed-seed random rhs, against
/// ln(n) log2(n) / n.
RateFit rate_check_pseries(double p, double t0, const std::vector<Eigen::Index>& n_list,
                           std::uint64_t seed = kDefaultSeed);
RateFit rate_check_symbol(const GeneratingFunction& f, const std::vector<Eigen::Index>& n_list,
                          std::uint64_t seed = kDefaultSeed);

/// vec_err of f / f_max under a centred (2L+1)-wide rhs, against 1/sqrt(n).
RateFit rate_check_banded_rhs(const GeneratingFunction& f, long half_width,
                              const std::vector<Eigen::Index>& n_list);

nlohmann::ordered_json to_json(const RateFit& fit);

/// max_l |lambda_l(T) - lambda_l(C)| with both spectra sorted descending.
double eigenvalue_matching(const ToeplitzMatrix& t, const CirculantMatrix& c,
                           Eigen::Index cap = kDenseCap);

}  // namespace tqls
