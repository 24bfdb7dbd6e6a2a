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
#include "tqls/structured.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace tqls {
namespace {

constexpr double kSingularRatio = 1e-14;
constexpr int kBisectionCap = 200;

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) throw DimensionError(std::string(what) + ": dimension mismatch");
}

double hermitian_tolerance(const ComplexVector& t) {
  return 1e-12 * std::max(1.0, t.cwiseAbs().maxCoeff());
}

void require_hermitian(const ComplexVector& t, const char* what) {
  if (t.size() % 2 == 0) throw DimensionError(std::string(what) + ": need 2n-1 diagonals");
  const Eigen::Index n = (t.size() + 1) / 2;
  const double tol = hermitian_tolerance(t);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (std::abs(t[n - 1 - k] - std::conj(t[n - 1 + k])) > tol) {
      throw DomainError(std::string(what) + ": diagonals must satisfy t_{-k} = conj(t_k)");
    }
  }
}

// Durbin recursion on first column r_0..r_{n-1}; false as soon as a
// prediction error turns non-positive.
template <typename Scalar>
bool durbin_positive_definite(const std::vector<Scalar>& r) {
  using std::abs;
  const std::size_t n = r.size();
  double error = std::real(r[0]);
  if (!(error > 0.0)) return false;
  std::vector<Scalar> a(n, Scalar(0));
  std::vector<Scalar> next(n, Scalar(0));
  a[0] = Scalar(1);
  for (std::size_t m = 1; m < n; ++m) {
    Scalar acc(0);
    for (std::size_t i = 0; i < m; ++i) acc += a[i] * r[m - i];
    const Scalar k = -acc / error;
    for (std::size_t i = 0; i <= m; ++i) {
      Scalar reflected = (m - i < m) ? a[m - i] : Scalar(0);
      if constexpr (!std::is_same_v<Scalar, double>) reflected = std::conj(reflected);
      next[i] = (i < m ? a[i] : Scalar(0)) + k * reflected;
    }
    std::swap(a, next);
    error *= 1.0 - std::norm(k);
    if (!(error > 0.0)) return false;
  }
  return true;
}

bool shifted_positive_definite(const ToeplitzMatrix& t, double shift, bool negate) {
  const Eigen::Index n = t.size();
  if (t.is_real()) {
    std::vector<double> r(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      double v = t.diagonal(k).real();
      if (k == 0) v -= shift;
      r[static_cast<std::size_t>(k)] = negate ? -v : v;
    }
    return durbin_positive_definite(r);
  }
  std::vector<std::complex<double>> r(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> v = t.diagonal(k);
    if (k == 0) v -= shift;
    r[static_cast<std::size_t>(k)] = negate ? -v : v;
  }
  return durbin_positive_definite(r);
}

}  // namespace

ToeplitzMatrix::ToeplitzMatrix(ComplexVector diagonals, std::optional<GeneratingFunction> symbol)
    : n_((diagonals.size() + 1) / 2), diagonals_(std::move(diagonals)), symbol_(std::move(symbol)) {
  if (diagonals_.size() < 1) throw DimensionError("ToeplitzMatrix: empty diagonal list");
  require_finite(diagonals_, "ToeplitzMatrix");
  require_hermitian(diagonals_, "ToeplitzMatrix");
  real_ = diagonals_.imag().cwiseAbs().maxCoeff() == 0.0;
}

double ToeplitzMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (Eigen::Index k = -(n_ - 1); k <= n_ - 1; ++k) {
    sum += static_cast<double>(n_ - std::abs(k)) * std::norm(diagonal(k));
  }
  return std::sqrt(sum);
}

DenseMatrix ToeplitzMatrix::dense() const {
  DenseMatrix m(n_, n_);
  for (Eigen::Index j = 0; j < n_; ++j)
    for (Eigen::Index i = 0; i < n_; ++i) m(i, j) = diagonal(i - j);
  return m;
}

Eigen::MatrixXd ToeplitzMatrix::dense_real() const {
  Eigen::MatrixXd m(n_, n_);
  for (Eigen::Index j = 0; j < n_; ++j)
    for (Eigen::Index i = 0; i < n_; ++i) m(i, j) = diagonal(i - j).real();
  return m;
}

CirculantMatrix CirculantMatrix::from_top_row(ComplexVector top_row) {
  if (top_row.size() < 1) throw DimensionError("CirculantMatrix: empty top row");
  require_finite(top_row, "CirculantMatrix");
  ComplexVector eig = unnormalized_dft(top_row, ExponentSign::kMinus);
  return CirculantMatrix(std::move(top_row), std::move(eig));
}

CirculantMatrix CirculantMatrix::from_eigenvalues(ComplexVector eigenvalues) {
  if (eigenvalues.size() < 1) throw DimensionError("CirculantMatrix: empty spectrum");
  require_finite(eigenvalues, "CirculantMatrix");
  const double n = static_cast<double>(eigenvalues.size());
  ComplexVector row = unnormalized_dft(eigenvalues, ExponentSign::kPlus) / n;
  return CirculantMatrix(std::move(row), std::move(eigenvalues));
}

std::complex<double> CirculantMatrix::operator()(Eigen::Index row, Eigen::Index col) const {
  const Eigen::Index n = size();
  Eigen::Index k = (col - row) % n;
  if (k < 0) k += n;
  return top_row_[k];
}

DenseMatrix CirculantMatrix::dense() const {
  const Eigen::Index n = size();
  DenseMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = (*this)(i, j);
  return m;
}

ToeplitzMatrix toeplitz_from_symbol(const GeneratingFunction& f, Eigen::Index n) {
  if (n < 1) throw DimensionError("toeplitz_from_symbol: n must be positive");
  return ToeplitzMatrix(fourier_coefficients(f, n), f);
}

CirculantMatrix associated_circulant(const GeneratingFunction& f, Eigen::Index n) {
  if (n < 1) throw DimensionError("associated_circulant: n must be positive");
  const RealVector samples = sample_grid(f, n);
  if (!(samples.minCoeff() > 0.0)) {
    throw SingularError("associated_circulant: symbol sample <= 0 on the grid");
  }
  // Top row from the samples; the cached spectrum is the samples themselves
  // rather than a round-tripped transform.
  const ComplexVector psi = samples.cast<std::complex<double>>();
  return CirculantMatrix::from_eigenvalues(psi);
}

CirculantMatrix wrapped_circulant(const ComplexVector& t) {
  require_finite(t, "wrapped_circulant");
  require_hermitian(t, "wrapped_circulant");
  const Eigen::Index n = (t.size() + 1) / 2;
  ComplexVector forward(n);
  ComplexVector backward(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    forward[k] = t[n - 1 + k];
    backward[k] = t[n - 1 - k];
  }
  ComplexVector psi = unnormalized_dft(forward, ExponentSign::kPlus) +
                      unnormalized_dft(backward, ExponentSign::kMinus);
  psi.array() -= t[n - 1];
  return CirculantMatrix::from_eigenvalues(std::move(psi));
}

CirculantMatrix circulant_from_sequence(const ComplexVector& t) {
  CirculantMatrix c = wrapped_circulant(t);
  if (!(c.eigenvalues().real().minCoeff() > 0.0)) {
    throw SingularError("circulant_from_sequence: truncated symbol <= 0 on the grid");
  }
  return c;
}

ComplexVector circulant_solve(const CirculantMatrix& c, const ComplexVector& b) {
  require_same_size(c.size(), b.size(), "circulant_solve");
  const ComplexVector& psi = c.eigenvalues();
  const double largest = psi.cwiseAbs().maxCoeff();
  if (!(psi.cwiseAbs().minCoeff() >= kSingularRatio * largest) || largest == 0.0) {
    throw SingularError("circulant_solve: eigenvalue below 1e-14 of the largest");
  }
  const double n = static_cast<double>(c.size());
  ComplexVector y = unnormalized_dft(b, ExponentSign::kPlus).cwiseQuotient(psi);
  return unnormalized_dft(y, ExponentSign::kMinus) / n;
}

ComplexVector circulant_matvec(const CirculantMatrix& c, const ComplexVector& v) {
  require_same_size(c.size(), v.size(), "circulant_matvec");
  const double n = static_cast<double>(c.size());
  ComplexVector y = unnormalized_dft(v, ExponentSign::kPlus).cwiseProduct(c.eigenvalues());
  return unnormalized_dft(y, ExponentSign::kMinus) / n;
}

CirculantMatrix circulant_multiply(const CirculantMatrix& a, const CirculantMatrix& b) {
  require_same_size(a.size(), b.size(), "circulant_multiply");
  return CirculantMatrix::from_eigenvalues(a.eigenvalues().cwiseProduct(b.eigenvalues()));
}

CirculantMatrix circulant_add(const CirculantMatrix& a, const CirculantMatrix& b) {
  require_same_size(a.size(), b.size(), "circulant_add");
  return CirculantMatrix::from_top_row(a.top_row() + b.top_row());
}

ComplexVector toeplitz_matvec(const ToeplitzMatrix& t, const ComplexVector& v) {
  const Eigen::Index n = t.size();
  require_same_size(n, v.size(), "toeplitz_matvec");
  const Eigen::Index m = next_power_of_two(2 * n - 1);
  // First column of the embedding circulant: t_0..t_{n-1}, zeros, t_{-(n-1)}..t_{-1}.
  ComplexVector column = ComplexVector::Zero(m);
  for (Eigen::Index k = 0; k < n; ++k) column[k] = t.diagonal(k);
  for (Eigen::Index k = 1; k < n; ++k) column[m - k] = t.diagonal(-k);
  ComplexVector padded = ComplexVector::Zero(m);
  padded.head(n) = v;
  const DftPlan<double> forward(m, ExponentSign::kMinus);
  const DftPlan<double> backward(m, ExponentSign::kPlus);
  const ComplexVector product = forward(column).cwiseProduct(forward(padded));
  return backward(product).head(n) / static_cast<double>(m);
}

ComplexVector toeplitz_solve_dense(const ToeplitzMatrix& t, const ComplexVector& b,
                                   Eigen::Index cap) {
  const Eigen::Index n = t.size();
  require_same_size(n, b.size(), "toeplitz_solve_dense");
  if (n > cap) throw CapExceededError("toeplitz_solve_dense: n exceeds dense cap");
  const double floor = kSingularRatio * t.frobenius_norm();
  if (t.is_real()) {
    const Eigen::MatrixXd a = t.dense_real();
    const Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd diag = Eigen::MatrixXd(llt.matrixL()).diagonal();
      if (diag.cwiseProduct(diag).minCoeff() < floor) {
        throw SingularError("toeplitz_solve_dense: pivot below 1e-14 ||T||_F");
      }
      ComplexVector x(n);
      x.real() = llt.solve(b.real());
      x.imag() = llt.solve(b.imag());
      return x;
    }
  }
  const Eigen::PartialPivLU<DenseMatrix> lu(t.dense());
  if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() < floor) {
    throw SingularError("toeplitz_solve_dense: pivot below 1e-14 ||T||_F");
  }
  return lu.solve(b);
}

FrobeniusDistance frobenius_distance(const ToeplitzMatrix& t, const CirculantMatrix& c) {
  const Eigen::Index n = t.size();
  require_same_size(n, c.size(), "frobenius_distance");
  double sum = 0.0;
  for (Eigen::Index d = -(n - 1); d <= n - 1; ++d) {
    Eigen::Index slot = (-d) % n;
    if (slot < 0) slot += n;
    sum += static_cast<double>(n - std::abs(d)) * std::norm(c.top_row()[slot] - t.diagonal(d));
  }
  const double abs = std::sqrt(sum);
  const double norm = t.frobenius_norm();
  return {abs, norm > 0.0 ? abs / norm : 0.0};
}

bool toeplitz_positive_definite(const ComplexVector& diagonals) {
  const ToeplitzMatrix t(diagonals);
  return shifted_positive_definite(t, 0.0, false);
}

RealVector toeplitz_eigenvalues(const ToeplitzMatrix& t, Eigen::Index cap) {
  if (t.size() > cap) throw CapExceededError("toeplitz_eigenvalues: n exceeds dense cap");
  if (t.is_real()) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.dense_real(), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
  }
  const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(t.dense(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

ConditionNumber condition_number(const ToeplitzMatrix& t, Eigen::Index dense_limit) {
  ConditionNumber out{};
  if (t.symbol()) out.symbol_proxy = t.symbol()->mu();
  const Eigen::Index n = t.size();
  if (n <= dense_limit) {
    const RealVector eig = toeplitz_eigenvalues(t, dense_limit);
    out.lambda_min = eig[0];
    out.lambda_max = eig[n - 1];
    out.method = "dense";
  } else {
    // Gershgorin brackets; the trace puts t_0 between the extremes.
    double radius = 0.0;
    for (Eigen::Index k = 1; k < n; ++k) radius += 2.0 * std::abs(t.diagonal(k));
    const double t0 = t.diagonal(0).real();
    auto bisect = [&](double lo, double hi, bool for_max) {
      // for_max: sigma I - T is PD iff sigma > lambda_max.
      // otherwise: T - sigma I is PD iff sigma < lambda_min.
      for (int it = 0; it < kBisectionCap; ++it) {
        if (hi - lo <= 1e-14 * std::max(std::abs(lo), std::abs(hi))) return 0.5 * (lo + hi);
        const double mid = 0.5 * (lo + hi);
        const bool pd = shifted_positive_definite(t, mid, for_max);
        if (for_max == pd) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      throw ConvergenceError("condition_number: bisection did not converge", lo, hi);
    };
    out.lambda_min = bisect(t0 - radius, t0, false);
    out.lambda_max = bisect(t0, t0 + radius, true);
    out.method = "iterative";
  }
  if (!(out.lambda_min > 0.0)) {
    throw DomainError("condition_number: matrix is not positive definite");
  }
  out.kappa = out.lambda_max / out.lambda_min;
  return out;
}

}  // namespace tqls
