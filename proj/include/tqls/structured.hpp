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
 * Hermitian Toeplitz and circulant matrices.
 *
 * Conventions: T(k, j) = t_{k-j}; circulant row i is the right cyclic shift
 * of row i-1, so C(i, j) = c_{(j-i) mod n} and its eigenvalues are
 * psi_m = sum_k c_k exp(-2 pi i m k / n). With [F]_{jk} = exp(-2 pi i jk/n)/sqrt(n)
 * this gives C = F diag(psi) F^dagger, which coincides with F^dagger diag(psi) F
 * whenever psi_m = psi_{n-m} (every real-coefficient symbol).
 */
#pragma once

#include <optional>
#include <string>

#include "tqls/dft.hpp"
#include "tqls/genfun.hpp"

namespace tqls {

using DenseMatrix = Eigen::MatrixXcd;

inline constexpr Eigen::Index kDenseCap = 4096;
inline constexpr Eigen::Index kDenseEigenLimit = 1024;

class ToeplitzMatrix {
 public:
  /// `diagonals` holds t_{-(n-1)} .. t_{n-1} (length 2n-1) and must be Hermitian.
  explicit ToeplitzMatrix(ComplexVector diagonals,
                          std::optional<GeneratingFunction> symbol = std::nullopt);

  Eigen::Index size() const { return n_; }
  std::complex<double> diagonal(Eigen::Index k) const { return diagonals_[k + n_ - 1]; }
  std::complex<double> operator()(Eigen::Index row, Eigen::Index col) const {
    return diagonal(row - col);
  }
  const ComplexVector& diagonals() const { return diagonals_; }
  const std::optional<GeneratingFunction>& symbol() const { return symbol_; }

  /// True when every t_k has zero imaginary part.
  bool is_real() const { return real_; }
  double frobenius_norm() const;
  DenseMatrix dense() const;
  Eigen::MatrixXd dense_real() const;

 private:
  Eigen::Index n_;
  ComplexVector diagonals_;
  std::optional<GeneratingFunction> symbol_;
  bool real_;
};

class CirculantMatrix {
 public:
  static CirculantMatrix from_top_row(ComplexVector top_row);
  static CirculantMatrix from_eigenvalues(ComplexVector eigenvalues);

  Eigen::Index size() const { return top_row_.size(); }
  const ComplexVector& top_row() const { return top_row_; }
  const ComplexVector& eigenvalues() const { return eigenvalues_; }
  std::complex<double> operator()(Eigen::Index row, Eigen::Index col) const;
  DenseMatrix dense() const;

 private:
  CirculantMatrix(ComplexVector top_row, ComplexVector eigenvalues)
      : top_row_(std::move(top_row)), eigenvalues_(std::move(eigenvalues)) {}

  ComplexVector top_row_;
  ComplexVector eigenvalues_;
};

ToeplitzMatrix toeplitz_from_symbol(const GeneratingFunction& f, Eigen::Index n);

/// C_n(f): top row c_k = (1/n) sum_j f(2 pi j/n) exp(2 pi i jk/n); its
/// eigenvalues are exactly the grid samples of f.
CirculantMatrix associated_circulant(const GeneratingFunction& f, Eigen::Index n);

/// C_n(f_hat_n) from t_{-(n-1)} .. t_{n-1}: eigenvalues are the forward sum
/// over t_0..t_{n-1} plus the backward sum over t_0..t_{-(n-1)}, minus t_0.
/// C_n(f_hat_n) for t_{-(n-1)}..t_{n-1}, with no positivity requirement.
CirculantMatrix wrapped_circulant(const ComplexVector& t);
/// wrapped_circulant, rejecting sequences whose truncated symbol is <= 0 on the grid.
CirculantMatrix circulant_from_sequence(const ComplexVector& t);

ComplexVector circulant_solve(const CirculantMatrix& c, const ComplexVector& b);
ComplexVector circulant_matvec(const CirculantMatrix& c, const ComplexVector& v);
CirculantMatrix circulant_multiply(const CirculantMatrix& a, const CirculantMatrix& b);
CirculantMatrix circulant_add(const CirculantMatrix& a, const CirculantMatrix& b);

inline CirculantMatrix operator*(const CirculantMatrix& a, const CirculantMatrix& b) {
  return circulant_multiply(a, b);
}
inline CirculantMatrix operator+(const CirculantMatrix& a, const CirculantMatrix& b) {
  return circulant_add(a, b);
}
inline ComplexVector operator*(const CirculantMatrix& c, const ComplexVector& v) {
  return circulant_matvec(c, v);
}

/// T v in O(n log n) through a power-of-two circulant embedding.
ComplexVector toeplitz_matvec(const ToeplitzMatrix& t, const ComplexVector& v);

inline ComplexVector operator*(const ToeplitzMatrix& t, const ComplexVector& v) {
  return toeplitz_matvec(t, v);
}

/// Reference solve by dense factorization (Cholesky for real SPD input,
/// partial-pivot LU otherwise).
ComplexVector toeplitz_solve_dense(const ToeplitzMatrix& t, const ComplexVector& b,
                                   Eigen::Index cap = kDenseCap);

struct FrobeniusDistance {
  double abs;
  double rel;
};

/// ||T - C||_F accumulated per diagonal with multiplicity n - |d|.
FrobeniusDistance frobenius_distance(const ToeplitzMatrix& t, const CirculantMatrix& c);

/// Whether the Hermitian Toeplitz matrix with the given diagonals is positive
/// definite, decided by the Durbin recursion (every prediction error > 0).
bool toeplitz_positive_definite(const ComplexVector& diagonals);

struct ConditionNumber {
  double kappa;
  std::string method;  // "dense" or "iterative"
  double lambda_min;
  double lambda_max;
  /// f_max / f_min of the generating symbol, when one is attached.
  std::optional<double> symbol_proxy;
};

ConditionNumber condition_number(const ToeplitzMatrix& t,
                                 Eigen::Index dense_limit = kDenseEigenLimit);

/// All eigenvalues of T, ascending (dense Hermitian eigensolve).
RealVector toeplitz_eigenvalues(const ToeplitzMatrix& t, Eigen::Index cap = kDenseCap);

}  // namespace tqls
