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
 * Generating functions (symbols) of Hermitian Toeplitz sequences.
 *
 * A symbol is a strictly positive 2pi-periodic real function
 *   f(lambda) = sum_k t_k exp(i k lambda),   t_{-k} = conj(t_k).
 * The catalog kinds carry closed-form coefficients and exact extrema; band and
 * sampled (truncated) symbols estimate their extrema by dense sampling.
 */
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tqls/dft.hpp"

namespace tqls {

struct Constant {
  double a;
};

/// a + b cos(lambda), a > |b|.
struct ShiftedCosine {
  double a;
  double b;
};

/// (1 - rho^2) / (1 - 2 rho cos(lambda) + rho^2), coefficients rho^|k|.
struct KacMurdockSzego {
  double rho;
};

/// t_0 = t0, t_k = |k|^-p otherwise.
struct PSeries {
  double p;
  double t0;
};

/// Real symmetric band, coefficients listed t_{-r} .. t_r.
struct BandSymbol {
  std::vector<double> coefficients;
};

/// Hermitian coefficient list t_{-(n-1)} .. t_{n-1}; the truncated symbol.
struct SampledSequence {
  std::vector<std::complex<double>> coefficients;
};

using SymbolKind =
    std::variant<Constant, ShiftedCosine, KacMurdockSzego, PSeries, BandSymbol, SampledSequence>;

class GeneratingFunction {
 public:
  static GeneratingFunction constant(double a);
  static GeneratingFunction shifted_cosine(double a, double b);
  static GeneratingFunction kac_murdock_szego(double rho);
  static GeneratingFunction p_series(double p, double t0);
  static GeneratingFunction band(std::vector<double> coefficients);
  static GeneratingFunction sampled(std::vector<std::complex<double>> coefficients);

  /// factor * f. Used to rescale a symbol so that ||T_n|| <= 1.
  GeneratingFunction scaled(double factor) const;

  const SymbolKind& kind() const { return kind_; }
  double scale() const { return scale_; }
  double f_min() const { return f_min_; }
  double f_max() const { return f_max_; }
  double mu() const { return f_max_ / f_min_; }
  /// True when f_min/f_max are closed-form rather than sampled estimates.
  bool extrema_exact() const { return extrema_exact_; }

  /// Largest |k| with t_k != 0 when f is a trigonometric polynomial.
  std::optional<long> coefficient_radius() const;

  /// Short textual form in the CLI grammar, e.g. "kms:0.5".
  std::string describe() const;

  // Unchecked evaluation; lambda may be any real.
  double value(double lambda) const;
  std::complex<double> coefficient(long k) const;

 private:
  struct PolylogSeries;

  explicit GeneratingFunction(SymbolKind kind);
  void estimate_extrema();

  SymbolKind kind_;
  double scale_ = 1.0;
  double f_min_ = 0.0;
  double f_max_ = 0.0;
  bool extrema_exact_ = true;
  std::shared_ptr<const PolylogSeries> polylog_;
};

/// f(lambda) for lambda in [0, 2pi]; anything outside is a DomainError.
double evaluate(const GeneratingFunction& f, double lambda);

/// t_k = (1/2pi) int_0^{2pi} f(lambda) exp(-i k lambda) dlambda (closed form).
std::complex<double> fourier_coefficient(const GeneratingFunction& f, long k);

/// t_{-(n-1)} .. t_{n-1}, index k + n - 1.
ComplexVector fourier_coefficients(const GeneratingFunction& f, Eigen::Index n);

struct QuadratureResult {
  std::complex<double> value;
  long samples = 0;
  /// |difference| between the last two sample counts; the aliasing tail.
  double aliasing_estimate = 0.0;
};

/// Composite trapezoid estimate of t_k, starting at 2^ceil(log2(64 max(|k|,1)))
/// samples and doubling until successive estimates agree to 1e-12 or
/// `max_samples` is reached.
QuadratureResult fourier_coefficient_quadrature(const GeneratingFunction& f, long k,
                                                long max_samples = 1L << 20);

/// (f(2 pi j / n))_{j < n}.
RealVector sample_grid(const GeneratingFunction& f, Eigen::Index n);

/// f_hat(lambda) = sum_{|k| <= n-1} t_k exp(i k lambda) from an odd-length
/// Hermitian list t_{-(n-1)} .. t_{n-1}.
GeneratingFunction truncated_symbol(std::span<const std::complex<double>> t);
GeneratingFunction truncated_symbol(const ComplexVector& t);

struct ParsevalCheck {
  double lhs;  // sum_{|k| <= K} |t_k|^2
  double rhs;  // (1/2pi) int f^2
  long samples;
};

ParsevalCheck parseval_check(const GeneratingFunction& f, long order);

}  // namespace tqls
