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
 * Discrete Fourier transforms of arbitrary length.
 *
 * Powers of two go through an iterative radix-2 transform; every other length
 * is embedded into a power-of-two circular convolution (Bluestein chirp-z).
 * Twiddles and chirps are evaluated from their exact angles, never by
 * repeated multiplication.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include "tqls/errors.hpp"

namespace tqls {

using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Sign of the exponent in  sum_k v_k exp(sign * 2 pi i m k / n).
enum class ExponentSign : int { kMinus = -1, kPlus = +1 };

inline bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index m = 1;
  while (m < n) m <<= 1;
  return m;
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& v, const char* what) {
  if (!v.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
}

/// A precomputed unnormalized transform of fixed length and sign. Read-only
/// after construction, so one plan may be shared between threads.
template <typename Real>
class DftPlan {
 public:
  using Complex = std::complex<Real>;
  using Vector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  DftPlan(Eigen::Index n, ExponentSign sign) : n_(n), sign_(sign) {
    if (n < 1) throw DimensionError("DftPlan: length must be positive");
    if (is_power_of_two(n)) {
      init_radix2();
    } else {
      init_bluestein();
    }
  }

  Eigen::Index size() const { return n_; }
  ExponentSign sign() const { return sign_; }

  Vector operator()(const Vector& v) const {
    if (v.size() != n_) throw DimensionError("DftPlan: input length mismatch");
    if (n_ == 1) return v;
    if (bluestein_m_ == 0) {
      Vector out = v;
      radix2_in_place(out);
      return out;
    }
    return bluestein(v);
  }

 private:
  static Complex unit_root(Real numerator_turns) {
    // exp(i * 2 pi * numerator_turns)
    const Real angle = Real(2) * std::numbers::pi_v<Real> * numerator_turns;
    return Complex(std::cos(angle), std::sin(angle));
  }

  void init_radix2() {
    const Real s = static_cast<Real>(static_cast<int>(sign_));
    twiddles_.resize(static_cast<std::size_t>(n_ / 2));
    for (Eigen::Index k = 0; k < n_ / 2; ++k) {
      twiddles_[static_cast<std::size_t>(k)] =
          unit_root(s * static_cast<Real>(k) / static_cast<Real>(n_));
    }
    bit_reverse_.resize(static_cast<std::size_t>(n_));
    int bits = 0;
    while ((Eigen::Index{1} << bits) < n_) ++bits;
    for (Eigen::Index i = 0; i < n_; ++i) {
      Eigen::Index r = 0;
      for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1) << (bits - 1 - b);
      bit_reverse_[static_cast<std::size_t>(i)] = r;
    }
  }

  void radix2_in_place(Vector& a) const {
    for (Eigen::Index i = 0; i < n_; ++i) {
      const Eigen::Index j = bit_reverse_[static_cast<std::size_t>(i)];
      if (i < j) std::swap(a[i], a[j]);
    }
    for (Eigen::Index len = 2; len <= n_; len <<= 1) {
      const Eigen::Index half = len / 2;
      const Eigen::Index stride = n_ / len;
      for (Eigen::Index i = 0; i < n_; i += len) {
        for (Eigen::Index j = 0; j < half; ++j) {
          const Complex w = twiddles_[static_cast<std::size_t>(j * stride)];
          const Complex u = a[i + j];
          const Complex t = a[i + j + half] * w;
          a[i + j] = u + t;
          a[i + j + half] = u - t;
        }
      }
    }
  }

  // jk = (j^2 + k^2 - (k - j)^2) / 2 turns the transform into a convolution
  // with the chirp exp(sign * pi i j^2 / n).
  void init_bluestein() {
    const Real s = static_cast<Real>(static_cast<int>(sign_));
    bluestein_m_ = next_power_of_two(2 * n_ - 1);
    chirp_.resize(n_);
    const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n_);
    for (Eigen::Index j = 0; j < n_; ++j) {
      const std::uint64_t jj = static_cast<std::uint64_t>(j);
      const std::uint64_t sq = (jj * jj) % two_n;
      chirp_[j] = unit_root(s * static_cast<Real>(sq) / static_cast<Real>(two_n));
    }
    forward_ = std::make_shared<const DftPlan>(bluestein_m_, ExponentSign::kMinus);
    backward_ = std::make_shared<const DftPlan>(bluestein_m_, ExponentSign::kPlus);
    Vector kernel = Vector::Zero(bluestein_m_);
    kernel[0] = std::conj(chirp_[0]);
    for (Eigen::Index j = 1; j < n_; ++j) {
      kernel[j] = std::conj(chirp_[j]);
      kernel[bluestein_m_ - j] = std::conj(chirp_[j]);
    }
    kernel_spectrum_ = (*forward_)(kernel);
  }

  Vector bluestein(const Vector& v) const {
    Vector a = Vector::Zero(bluestein_m_);
    a.head(n_) = v.cwiseProduct(chirp_);
    Vector spectrum = (*forward_)(a).cwiseProduct(kernel_spectrum_);
    const Vector conv = (*backward_)(spectrum) / static_cast<Real>(bluestein_m_);
    return conv.head(n_).cwiseProduct(chirp_);
  }

  Eigen::Index n_;
  ExponentSign sign_;
  std::vector<Complex> twiddles_;
  std::vector<Eigen::Index> bit_reverse_;
  Eigen::Index bluestein_m_ = 0;
  Vector chirp_;
  Vector kernel_spectrum_;
  std::shared_ptr<const DftPlan> forward_;
  std::shared_ptr<const DftPlan> backward_;
};

/// output_m = sum_k v_k exp(sign * 2 pi i m k / n); no normalization.
inline ComplexVector unnormalized_dft(const ComplexVector& v, ExponentSign sign) {
  return DftPlan<double>(v.size(), sign)(v);
}

/// F_n v with [F_n]_{jk} = exp(-2 pi i jk / n) / sqrt(n).
inline ComplexVector unitary_dft(const ComplexVector& v) {
  return unnormalized_dft(v, ExponentSign::kMinus) / std::sqrt(static_cast<double>(v.size()));
}

/// F_n^dagger v; inverse of unitary_dft.
inline ComplexVector unitary_idft(const ComplexVector& v) {
  return unnormalized_dft(v, ExponentSign::kPlus) / std::sqrt(static_cast<double>(v.size()));
}

}  // namespace tqls
