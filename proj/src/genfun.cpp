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
#include "tqls/genfun.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace tqls {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kExtremaSamples = 1L << 16;
constexpr long kDirectEvaluationRadius = 32;

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

bool is_trig_kind(const SymbolKind& kind) {
  return std::holds_alternative<BandSymbol>(kind) || std::holds_alternative<SampledSequence>(kind);
}

// Minimizes g on [lo, hi] by golden-section search.
template <typename G>
double golden_section_min(G&& g, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    if (gc < gd) {
      hi = d;
      d = c;
      gd = gc;
      c = hi - inv_phi * (hi - lo);
      gc = g(c);
    } else {
      lo = c;
      c = d;
      gc = gd;
      d = lo + inv_phi * (hi - lo);
      gd = g(d);
    }
  }
  return std::min(gc, gd);
}

}  // namespace

// Real part of Li_p(exp(i lambda)) = sum_{k>=1} cos(k lambda) / k^p, from the
// expansion of the polylogarithm about lambda = 0 (valid for |lambda| < 2pi):
//   non-integer p:  Gamma(1-p) cos(pi (p-1)/2) lambda^{p-1}
//                   + sum_j (-1)^j zeta(p-2j) lambda^{2j} / (2j)!
//   integer p:      the pole of Gamma is replaced by a lambda^{p-1} log term.
struct GeneratingFunction::PolylogSeries {
  static constexpr int kTerms = 48;

  explicit PolylogSeries(double p_in) : p(p_in) {
    const double nearest = std::round(p);
    integer = std::abs(p - nearest) < 1e-9;
    if (integer) p = nearest;
    even.assign(kTerms, 0.0);
    double factorial = 1.0;  // (2j)!
    for (int j = 0; j < kTerms; ++j) {
      if (j > 0) factorial *= static_cast<double>(2 * j - 1) * static_cast<double>(2 * j);
      const double arg = p - 2.0 * j;
      if (integer && arg == 1.0) continue;  // absorbed into the log term
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      even[j] = sign * std::riemann_zeta(arg) / factorial;
    }
    if (!integer) {
      singular = std::tgamma(1.0 - p) * std::cos(std::numbers::pi * (p - 1.0) / 2.0);
      return;
    }
    const int n = static_cast<int>(p);
    double fact = 1.0;  // (n-1)!
    for (int i = 2; i <= n - 1; ++i) fact *= i;
    if (n % 2 == 0) {
      const double sign = ((n - 2) / 2) % 2 == 0 ? 1.0 : -1.0;
      singular = sign * (-std::numbers::pi / 2.0) / fact;
    } else {
      const double sign = ((n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
      log_coeff = sign / fact;
      for (int i = 1; i <= n - 1; ++i) harmonic += 1.0 / i;
    }
  }

  double operator()(double lambda) const {
    double x = std::fmod(std::abs(lambda), kTwoPi);
    if (x > std::numbers::pi) x = kTwoPi - x;
    const double x2 = x * x;
    double series = 0.0;
    for (int j = kTerms - 1; j >= 0; --j) series = series * x2 + even[j];
    if (x == 0.0) return series;
    if (log_coeff != 0.0) {
      return series + log_coeff * std::pow(x, p - 1.0) * (harmonic - std::log(x));
    }
    return series + singular * std::pow(x, p - 1.0);
  }

  double p;
  bool integer = false;
  double singular = 0.0;
  double log_coeff = 0.0;
  double harmonic = 0.0;
  std::vector<double> even;
};

GeneratingFunction::GeneratingFunction(SymbolKind kind) : kind_(std::move(kind)) {}

GeneratingFunction GeneratingFunction::constant(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("const: a must be positive");
  GeneratingFunction f(Constant{a});
  f.f_min_ = f.f_max_ = a;
  return f;
}

GeneratingFunction GeneratingFunction::shifted_cosine(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a > std::abs(b))) {
    throw DomainError("cos: requires a > |b|");
  }
  GeneratingFunction f(ShiftedCosine{a, b});
  f.f_min_ = a - std::abs(b);
  f.f_max_ = a + std::abs(b);
  return f;
}

GeneratingFunction GeneratingFunction::kac_murdock_szego(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("kms: requires 0 < rho < 1");
  GeneratingFunction f(KacMurdockSzego{rho});
  f.f_min_ = (1.0 - rho) / (1.0 + rho);
  f.f_max_ = (1.0 + rho) / (1.0 - rho);
  return f;
}

GeneratingFunction GeneratingFunction::p_series(double p, double t0) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("pseries: requires p > 1");
  const double zeta = std::riemann_zeta(p);
  if (!(t0 > 2.0 * zeta) || !std::isfinite(t0)) {
    throw DomainError("pseries: requires t0 > 2 zeta(p) = " + format_number(2.0 * zeta));
  }
  GeneratingFunction f(PSeries{p, t0});
  f.polylog_ = std::make_shared<const PolylogSeries>(p);
  // The cosine series with convex decreasing coefficients decreases on [0, pi].
  const double eta = (1.0 - std::pow(2.0, 1.0 - p)) * zeta;
  f.f_max_ = t0 + 2.0 * zeta;
  f.f_min_ = t0 - 2.0 * eta;
  return f;
}

GeneratingFunction GeneratingFunction::band(std::vector<double> coefficients) {
  if (coefficients.empty() || coefficients.size() % 2 == 0) {
    throw DomainError("band: coefficient list t_{-r}..t_r must have odd length");
  }
  double scale = 0.0;
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw DomainError("band: non-finite coefficient");
    scale = std::max(scale, std::abs(c));
  }
  const std::size_t r = coefficients.size() / 2;
  for (std::size_t k = 1; k <= r; ++k) {
    if (std::abs(coefficients[r + k] - coefficients[r - k]) > 1e-12 * scale) {
      throw DomainError("band: coefficients must satisfy t_{-k} = t_k");
    }
  }
  GeneratingFunction f(BandSymbol{std::move(coefficients)});
  f.estimate_extrema();
  return f;
}

GeneratingFunction GeneratingFunction::sampled(std::vector<std::complex<double>> coefficients) {
  if (coefficients.empty() || coefficients.size() % 2 == 0) {
    throw DomainError("sequence: coefficient list t_{-(n-1)}..t_{n-1} must have odd length");
  }
  double scale = 0.0;
  for (const auto& c : coefficients) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError("sequence: non-finite coefficient");
    }
    scale = std::max(scale, std::abs(c));
  }
  const std::size_t r = coefficients.size() / 2;
  if (std::abs(coefficients[r].imag()) > 1e-12 * scale) {
    throw DomainError("sequence: t_0 must be real");
  }
  for (std::size_t k = 1; k <= r; ++k) {
    if (std::abs(coefficients[r - k] - std::conj(coefficients[r + k])) > 1e-12 * scale) {
      throw DomainError("sequence: coefficients must satisfy t_{-k} = conj(t_k)");
    }
  }
  GeneratingFunction f(SampledSequence{std::move(coefficients)});
  f.estimate_extrema();
  return f;
}

GeneratingFunction GeneratingFunction::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) throw DomainError("scale factor must be positive");
  GeneratingFunction g = *this;
  g.scale_ *= factor;
  g.f_min_ *= factor;
  g.f_max_ *= factor;
  return g;
}

std::optional<long> GeneratingFunction::coefficient_radius() const {
  return std::visit(
      [](const auto& k) -> std::optional<long> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return 0L;
        } else if constexpr (std::is_same_v<K, ShiftedCosine>) {
          return k.b == 0.0 ? 0L : 1L;
        } else if constexpr (std::is_same_v<K, BandSymbol>) {
          return static_cast<long>(k.coefficients.size() / 2);
        } else if constexpr (std::is_same_v<K, SampledSequence>) {
          return static_cast<long>(k.coefficients.size() / 2);
        } else {
          return std::nullopt;
        }
      },
      kind_);
}

std::string GeneratingFunction::describe() const {
  std::string s = std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return "const:" + format_number(k.a);
        } else if constexpr (std::is_same_v<K, ShiftedCosine>) {
          return "cos:" + format_number(k.a) + "," + format_number(k.b);
        } else if constexpr (std::is_same_v<K, KacMurdockSzego>) {
          return "kms:" + format_number(k.rho);
        } else if constexpr (std::is_same_v<K, PSeries>) {
          return "pseries:" + format_number(k.p) + "," + format_number(k.t0);
        } else if constexpr (std::is_same_v<K, BandSymbol>) {
          std::string out = "band:";
          for (std::size_t i = 0; i < k.coefficients.size(); ++i) {
            if (i) out += ",";
            out += format_number(k.coefficients[i]);
          }
          return out;
        } else {
          return "sequence:" + std::to_string(k.coefficients.size());
        }
      },
      kind_);
  if (scale_ != 1.0) s += "*" + format_number(scale_);
  return s;
}

std::complex<double> GeneratingFunction::coefficient(long k) const {
  const long ak = k < 0 ? -k : k;
  const std::complex<double> t = std::visit(
      [k, ak](const auto& kind) -> std::complex<double> {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return ak == 0 ? kind.a : 0.0;
        } else if constexpr (std::is_same_v<K, ShiftedCosine>) {
          if (ak == 0) return kind.a;
          return ak == 1 ? kind.b / 2.0 : 0.0;
        } else if constexpr (std::is_same_v<K, KacMurdockSzego>) {
          return std::pow(kind.rho, static_cast<double>(ak));
        } else if constexpr (std::is_same_v<K, PSeries>) {
          return ak == 0 ? kind.t0 : std::pow(static_cast<double>(ak), -kind.p);
        } else if constexpr (std::is_same_v<K, BandSymbol>) {
          const long r = static_cast<long>(kind.coefficients.size() / 2);
          return ak > r ? 0.0 : kind.coefficients[static_cast<std::size_t>(r + k)];
        } else {
          const long r = static_cast<long>(kind.coefficients.size() / 2);
          return ak > r ? std::complex<double>(0.0) : kind.coefficients[static_cast<std::size_t>(r + k)];
        }
      },
      kind_);
  return scale_ * t;
}

double GeneratingFunction::value(double lambda) const {
  const double v = std::visit(
      [this, lambda](const auto& kind) -> double {
        using K = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<K, Constant>) {
          return kind.a;
        } else if constexpr (std::is_same_v<K, ShiftedCosine>) {
          return kind.a + kind.b * std::cos(lambda);
        } else if constexpr (std::is_same_v<K, KacMurdockSzego>) {
          const double r = kind.rho;
          return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(lambda) + r * r);
        } else if constexpr (std::is_same_v<K, PSeries>) {
          return kind.t0 + 2.0 * (*polylog_)(lambda);
        } else {
          const std::size_t r = kind.coefficients.size() / 2;
          double sum = 0.0;
          for (std::size_t k = r; k >= 1; --k) {
            const std::complex<double> t = kind.coefficients[r + k];
            sum += t.real() * std::cos(static_cast<double>(k) * lambda) -
                   t.imag() * std::sin(static_cast<double>(k) * lambda);
          }
          return std::real(kind.coefficients[r]) + 2.0 * sum;
        }
      },
      kind_);
  return scale_ * v;
}

void GeneratingFunction::estimate_extrema() {
  extrema_exact_ = false;
  const RealVector grid = sample_grid(*this, kExtremaSamples);
  Eigen::Index imin = 0;
  Eigen::Index imax = 0;
  grid.minCoeff(&imin);
  grid.maxCoeff(&imax);
  const double h = kTwoPi / static_cast<double>(kExtremaSamples);
  const double lo_min = h * static_cast<double>(imin);
  const double lo_max = h * static_cast<double>(imax);
  const double refined_min =
      golden_section_min([this](double x) { return value(x); }, lo_min - h, lo_min + h);
  const double refined_max =
      -golden_section_min([this](double x) { return -value(x); }, lo_max - h, lo_max + h);
  f_min_ = std::min(grid[imin], refined_min);
  f_max_ = std::max(grid[imax], refined_max);
  if (!(f_min_ > 0.0)) {
    throw DomainError("symbol is not strictly positive (sampled minimum " + format_number(f_min_) +
                      ")");
  }
}

double evaluate(const GeneratingFunction& f, double lambda) {
  if (!(lambda >= 0.0 && lambda <= kTwoPi)) {
    throw DomainError("evaluate: lambda must lie in [0, 2pi]");
  }
  return f.value(lambda);
}

std::complex<double> fourier_coefficient(const GeneratingFunction& f, long k) {
  return f.coefficient(k);
}

ComplexVector fourier_coefficients(const GeneratingFunction& f, Eigen::Index n) {
  if (n < 1) throw DimensionError("fourier_coefficients: n must be positive");
  ComplexVector t(2 * n - 1);
  for (Eigen::Index k = -(n - 1); k <= n - 1; ++k) t[k + n - 1] = f.coefficient(static_cast<long>(k));
  return t;
}

QuadratureResult fourier_coefficient_quadrature(const GeneratingFunction& f, long k,
                                                long max_samples) {
  const long ak = k < 0 ? -k : k;
  long m = static_cast<long>(next_power_of_two(64 * std::max(ak, 1L)));
  auto trapezoid = [&f, k](long samples) {
    std::complex<double> sum = 0.0;
    for (long j = 0; j < samples; ++j) {
      const double lambda = kTwoPi * static_cast<double>(j) / static_cast<double>(samples);
      // exp(-i k lambda) with the angle reduced exactly modulo the period.
      long phase = (k % samples) * j % samples;
      if (phase < 0) phase += samples;
      const double angle = -kTwoPi * static_cast<double>(phase) / static_cast<double>(samples);
      sum += f.value(lambda) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return sum / static_cast<double>(samples);
  };
  QuadratureResult out;
  out.value = trapezoid(m);
  out.samples = m;
  out.aliasing_estimate = std::numeric_limits<double>::infinity();
  while (m < max_samples) {
    m *= 2;
    const std::complex<double> next = trapezoid(m);
    out.aliasing_estimate = std::abs(next - out.value);
    out.value = next;
    out.samples = m;
    if (out.aliasing_estimate <= 1e-12) break;
  }
  return out;
}

RealVector sample_grid(const GeneratingFunction& f, Eigen::Index n) {
  if (n < 1) throw DimensionError("sample_grid: n must be positive");
  const auto radius = f.coefficient_radius();
  if (radius && *radius > kDirectEvaluationRadius && is_trig_kind(f.kind())) {
    // f(2 pi j / n) = sum_k t_k exp(2 pi i j k / n): fold k modulo n, one DFT.
    ComplexVector folded = ComplexVector::Zero(n);
    for (long k = -*radius; k <= *radius; ++k) {
      long slot = k % static_cast<long>(n);
      if (slot < 0) slot += static_cast<long>(n);
      folded[slot] += f.coefficient(k);
    }
    return unnormalized_dft(folded, ExponentSign::kPlus).real();
  }
  RealVector out(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out[j] = f.value(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
  }
  return out;
}

GeneratingFunction truncated_symbol(std::span<const std::complex<double>> t) {
  return GeneratingFunction::sampled(std::vector<std::complex<double>>(t.begin(), t.end()));
}

GeneratingFunction truncated_symbol(const ComplexVector& t) {
  return truncated_symbol(std::span<const std::complex<double>>(t.data(), static_cast<std::size_t>(t.size())));
}

ParsevalCheck parseval_check(const GeneratingFunction& f, long order) {
  if (order < 0) throw DomainError("parseval_check: order must be non-negative");
  ParsevalCheck out{0.0, 0.0, 0};
  for (long k = -order; k <= order; ++k) out.lhs += std::norm(f.coefficient(k));

  long m = 64;
  if (auto r = f.coefficient_radius()) m = std::max(m, static_cast<long>(next_power_of_two(4 * *r + 2)));
  auto mean_square = [&f](long samples) {
    double sum = 0.0;
    for (long j = 0; j < samples; ++j) {
      const double v = f.value(kTwoPi * static_cast<double>(j) / static_cast<double>(samples));
      sum += v * v;
    }
    return sum / static_cast<double>(samples);
  };
  double current = mean_square(m);
  constexpr long kMaxSamples = 1L << 22;
  while (m < kMaxSamples) {
    m *= 2;
    const double next = mean_square(m);
    const double change = std::abs(next - current);
    current = next;
    if (change <= 1e-14 * std::abs(current)) break;
  }
  out.rhs = current;
  out.samples = m;
  return out;
}

}  // namespace tqls
