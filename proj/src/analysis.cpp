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
#include "tqls/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "tqls/emulator.hpp"

namespace tqls {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTailTolerance = 1e-12;

std::string csv_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size();
  return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
}

}  // namespace

std::string RhsSpec::label() const {
  switch (kind) {
    case RhsKind::kBasis:
      return "basis:" + std::to_string(index);
    case RhsKind::kRandom:
      return "random:" + std::to_string(seed);
    case RhsKind::kBanded:
      return "banded:" + std::to_string(half_width);
    case RhsKind::kFile:
      return "file:" + path;
  }
  return "unknown";
}

ComplexVector basis_rhs(long index, Eigen::Index n) {
  if (index < 0 || index >= n) throw DimensionError("basis rhs: index out of range");
  ComplexVector b = ComplexVector::Zero(n);
  b[index] = 1.0;
  return b;
}

ComplexVector random_rhs(std::uint64_t seed, Eigen::Index n) {
  if (n < 1) throw DimensionError("random rhs: n must be positive");
  SplitMix64 rng(seed);
  ComplexVector b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    b[i] = std::complex<double>(r * std::cos(phi), r * std::sin(phi)) / std::numbers::sqrt2;
  }
  return b / b.norm();
}

ComplexVector banded_rhs(long half_width, Eigen::Index n) {
  if (half_width < 0 || 2 * half_width + 1 > n) {
    throw DimensionError("banded rhs: need 0 <= L and 2L+1 <= n");
  }
  ComplexVector b = ComplexVector::Zero(n);
  const Eigen::Index centre = n / 2;
  const double value = 1.0 / std::sqrt(2.0 * static_cast<double>(half_width) + 1.0);
  for (long k = -half_width; k <= half_width; ++k) {
    // A window that would run past the end is shifted left to stay inside.
    Eigen::Index idx = centre + k;
    if (centre + half_width > n - 1) idx -= centre + half_width - (n - 1);
    b[idx] = value;
  }
  return b;
}

ComplexVector read_rhs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("rhs file: cannot open " + path);
  std::vector<std::complex<double>> values;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    fields.imbue(std::locale::classic());
    double re = 0.0;
    double im = 0.0;
    if (!(fields >> re)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw DomainError("rhs file: bad line " + std::to_string(line_no));
    }
    if (!(fields >> im)) throw DomainError("rhs file: missing imaginary part on line " + std::to_string(line_no));
    std::string rest;
    if (fields >> rest) throw DomainError("rhs file: trailing text on line " + std::to_string(line_no));
    values.emplace_back(re, im);
  }
  ComplexVector b(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) b[static_cast<Eigen::Index>(i)] = values[i];
  return b;
}

ComplexVector make_rhs(const RhsSpec& spec, Eigen::Index n) {
  switch (spec.kind) {
    case RhsKind::kBasis:
      return basis_rhs(spec.index, n);
    case RhsKind::kRandom:
      return random_rhs(spec.seed, n);
    case RhsKind::kBanded:
      return banded_rhs(spec.half_width, n);
    case RhsKind::kFile: {
      ComplexVector b = read_rhs_file(spec.path);
      if (b.size() != n) throw DimensionError("rhs file: length does not match n");
      return b;
    }
  }
  throw DomainError("unknown rhs kind");
}

ConvergenceRecord solution_errors(const GeneratingFunction& f, Eigen::Index n,
                                  const ComplexVector& b) {
  if (b.size() != n) throw DimensionError("solution_errors: rhs length mismatch");
  if (b.norm() == 0.0) throw DomainError("solution_errors: zero rhs");
  ConvergenceRecord rec;
  rec.n = n;

  const ToeplitzMatrix t = toeplitz_from_symbol(f, n);
  const CirculantMatrix c = associated_circulant(f, n);
  const ComplexVector x = toeplitz_solve_dense(t, b);
  const ComplexVector x_star = circulant_solve(c, b);

  rec.vec_err = (x_star - x).norm() / x.norm();
  rec.state_err = (x_star / x_star.norm() - x / x.norm()).norm();
  rec.epsilon = frobenius_distance(t, c).rel;
  const ConditionNumber cond = condition_number(t);
  rec.kappa = cond.kappa;
  rec.kappa_method = cond.method;
  rec.kappa_proxy = f.mu();
  const double ek = rec.epsilon * rec.kappa;
  if (ek < 1.0) {
    rec.bound_vec = ek / (1.0 - ek);
    rec.bound_state = 2.0 * ek / (1.0 - ek);
  } else {
    rec.bound_vec = kInf;
    rec.bound_state = kInf;
  }
  const double m = f.extrema_exact() ? f.f_min() : 0.99 * f.f_min();
  rec.success_probability = post_selection_probability(b, sample_grid(f, n), m);
  return rec;
}

long effective_radius(const GeneratingFunction& f) {
  if (auto r = f.coefficient_radius()) return *r;
  const double t0 = std::abs(f.coefficient(0));
  const double target = kTailTolerance * t0 * t0;
  if (const auto* k = std::get_if<KacMurdockSzego>(&f.kind())) {
    // 2 sum_{j > N} (s rho^j)^2 = 2 s^2 rho^{2(N+1)} / (1 - rho^2)
    const double s = f.scale();
    const double rho2 = k->rho * k->rho;
    long n = 0;
    while (2.0 * s * s * std::pow(rho2, static_cast<double>(n + 1)) / (1.0 - rho2) > target) ++n;
    return n;
  }
  if (const auto* p = std::get_if<PSeries>(&f.kind())) {
    // Tail bounded by the integral 2 s^2 N^{1-2p} / (2p - 1).
    const double s = f.scale();
    const double q = 2.0 * p->p - 1.0;
    return static_cast<long>(std::ceil(std::pow(2.0 * s * s / (q * target), 1.0 / q)));
  }
  throw DomainError("effective_radius: unsupported symbol");
}

FrobeniusDecomposition decompose_frobenius_error(const GeneratingFunction& f, Eigen::Index n) {
  if (n < 2) throw DimensionError("decompose_frobenius_error: n must be >= 2");
  const ToeplitzMatrix t = toeplitz_from_symbol(f, n);
  const CirculantMatrix c = associated_circulant(f, n);
  const CirculantMatrix c_hat = wrapped_circulant(t.diagonals());
  const double norm = t.frobenius_norm();

  FrobeniusDecomposition out{};
  out.sampling_term = (c.eigenvalues() - c_hat.eigenvalues()).norm() / norm;
  out.wrap_term = frobenius_distance(t, c_hat).rel;
  double corner = 0.0;
  for (Eigen::Index k = -(n - 1); k <= n - 1; ++k) {
    corner += static_cast<double>(std::abs(k)) * std::norm(t.diagonal(k));
  }
  out.wrap_closed_form = std::sqrt(corner) / norm;
  out.total_rel = frobenius_distance(t, c).rel;
  out.effective_radius = effective_radius(f);
  const double big_n = static_cast<double>(out.effective_radius);
  out.theorem_bound = static_cast<double>(n) > big_n
                          ? std::sqrt(big_n / (static_cast<double>(n) - big_n))
                          : kInf;
  return out;
}

std::vector<ConvergenceRecord> convergence_sweep(const GeneratingFunction& f,
                                                 const std::vector<Eigen::Index>& n_list,
                                                 const RhsSpec& rhs) {
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) throw DomainError("convergence_sweep: n list must be ascending");
  }
  std::vector<ConvergenceRecord> rows;
  rows.reserve(n_list.size());
  for (Eigen::Index n : n_list) {
    try {
      ConvergenceRecord rec = solution_errors(f, n, make_rhs(rhs, n));
      rec.rhs_kind = rhs.label();
      rec.seed = rhs.kind == RhsKind::kRandom ? rhs.seed : 0;
      rows.push_back(std::move(rec));
    } catch (const Error& e) {
      ConvergenceRecord rec;
      rec.n = n;
      rec.epsilon = rec.kappa = rec.vec_err = rec.state_err = kNaN;
      rec.bound_vec = rec.bound_state = rec.success_probability = kNaN;
      rec.rhs_kind = rhs.label();
      rec.seed = rhs.kind == RhsKind::kRandom ? rhs.seed : 0;
      rec.error = e.code() + ": " + e.what();
      rows.push_back(std::move(rec));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<ConvergenceRecord>& records) {
  out << "n,epsilon,kappa,vec_err,state_err,bound_vec,bound_state,success_probability,rhs_kind,seed\n";
  for (const auto& r : records) {
    const std::string kind = r.error ? "error:" + *r.error : r.rhs_kind;
    out << r.n << ',' << csv_number(r.epsilon) << ',' << csv_number(r.kappa) << ','
        << csv_number(r.vec_err) << ',' << csv_number(r.state_err) << ','
        << csv_number(r.bound_vec) << ',' << csv_number(r.bound_state) << ','
        << csv_number(r.success_probability) << ',' << csv_field(kind) << ',' << r.seed << '\n';
  }
}

std::string to_string(RateModel model) {
  switch (model) {
    case RateModel::kLnnLognOverN:
      return "lnn_logn_over_n";
    case RateModel::kInvSqrtN:
      return "inv_sqrt_n";
    case RateModel::kInvN:
      return "inv_n";
  }
  return "unknown";
}

double rate_model(RateModel model, double n) {
  switch (model) {
    case RateModel::kLnnLognOverN:
      return std::log(n) * std::log2(n) / n;
    case RateModel::kInvSqrtN:
      return 1.0 / std::sqrt(n);
    case RateModel::kInvN:
      return 1.0 / n;
  }
  return kNaN;
}

double resolution_floor(Eigen::Index n, double kappa) {
  const double eps = std::numeric_limits<double>::epsilon();
  return 100.0 * eps * kappa * std::max(1.0, std::log2(static_cast<double>(n)));
}

RateFit fit_rate(std::vector<Eigen::Index> n_values, std::vector<double> errors, RateModel model,
                 std::vector<double> floors, double tolerance_factor) {
  if (n_values.size() != errors.size() || n_values.empty()) {
    throw DimensionError("fit_rate: need matching, non-empty n and error lists");
  }
  if (floors.empty()) floors.assign(errors.size(), 0.0);
  RateFit fit;
  fit.model = model;
  fit.tolerance_factor = tolerance_factor;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double e = errors[i] <= floors[i] ? 0.0 : errors[i];
    fit.normalized_constants.push_back(e / rate_model(model, static_cast<double>(n_values[i])));
  }
  const double med = median(fit.normalized_constants);
  const std::size_t half = fit.normalized_constants.size() / 2;
  const double tail_max =
      *std::max_element(fit.normalized_constants.begin() + static_cast<long>(half),
                        fit.normalized_constants.end());
  fit.bounded = tail_max <= tolerance_factor * med;
  fit.n_values = std::move(n_values);
  fit.errors = std::move(errors);
  fit.resolution_floor = std::move(floors);
  return fit;
}

RateFit rate_check_symbol(const GeneratingFunction& f, const std::vector<Eigen::Index>& n_list,
                          std::uint64_t seed) {
  std::vector<double> errors;
  std::vector<double> floors;
  for (Eigen::Index n : n_list) {
    const ConvergenceRecord rec = solution_errors(f, n, random_rhs(seed, n));
    errors.push_back(rec.state_err);
    floors.push_back(resolution_floor(n, rec.kappa));
  }
  return fit_rate(n_list, std::move(errors), RateModel::kLnnLognOverN, std::move(floors));
}

RateFit rate_check_pseries(double p, double t0, const std::vector<Eigen::Index>& n_list,
                           std::uint64_t seed) {
  return rate_check_symbol(GeneratingFunction::p_series(p, t0), n_list, seed);
}

RateFit rate_check_banded_rhs(const GeneratingFunction& f, long half_width,
                              const std::vector<Eigen::Index>& n_list) {
  const GeneratingFunction unit = f.scaled(1.0 / f.f_max());
  std::vector<double> errors;
  std::vector<double> floors;
  for (Eigen::Index n : n_list) {
    const ConvergenceRecord rec = solution_errors(unit, n, banded_rhs(half_width, n));
    errors.push_back(rec.vec_err);
    floors.push_back(resolution_floor(n, rec.kappa));
  }
  return fit_rate(n_list, std::move(errors), RateModel::kInvSqrtN, std::move(floors));
}

nlohmann::ordered_json to_json(const RateFit& fit) {
  nlohmann::ordered_json j;
  j["model"] = to_string(fit.model);
  j["n"] = fit.n_values;
  j["error"] = fit.errors;
  j["normalized_constant"] = fit.normalized_constants;
  j["verdict"] = fit.bounded ? "bounded" : "violated";
  j["tolerance_factor"] = fit.tolerance_factor;
  j["resolution_floor"] = fit.resolution_floor;
  return j;
}

double eigenvalue_matching(const ToeplitzMatrix& t, const CirculantMatrix& c, Eigen::Index cap) {
  if (t.size() != c.size()) throw DimensionError("eigenvalue_matching: dimension mismatch");
  RealVector lt = toeplitz_eigenvalues(t, cap);
  RealVector lc = c.eigenvalues().real();
  std::sort(lt.begin(), lt.end(), std::greater<>());
  std::sort(lc.begin(), lc.end(), std::greater<>());
  return (lt - lc).cwiseAbs().maxCoeff();
}

}  // namespace tqls
