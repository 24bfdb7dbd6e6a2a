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
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "tqls/dft.hpp"

using tqls::ComplexVector;
using tqls::ExponentSign;

namespace {

// Direct O(n^2) sum, accumulated in long double.
ComplexVector naive_dft(const ComplexVector& v, int sign) {
  const auto n = v.size();
  ComplexVector out(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    std::complex<long double> acc = 0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const long double angle =
          sign * 2.0L * std::numbers::pi_v<long double> * static_cast<long double>((m * k) % n) / n;
      acc += std::complex<long double>(v[k].real(), v[k].imag()) *
             std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    out[m] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

ComplexVector random_vector(Eigen::Index n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd;
  ComplexVector v(n);
  for (auto& x : v) x = {nd(gen), nd(gen)};
  return v;
}

}  // namespace

TEST_CASE("unnormalized transform matches the direct sum for every small size") {
  for (Eigen::Index n = 1; n <= 70; ++n) {
    const ComplexVector v = random_vector(n, static_cast<unsigned>(n));
    for (int sign : {-1, 1}) {
      const ComplexVector fast = tqls::unnormalized_dft(v, static_cast<ExponentSign>(sign));
      const ComplexVector slow = naive_dft(v, sign);
      CHECK((fast - slow).norm() <= 1e-12 * slow.norm());
    }
  }
}

TEST_CASE("radix-2 and Bluestein paths on larger sizes") {
  for (Eigen::Index n : {256, 1000, 1021, 2048, 3000}) {
    const ComplexVector v = random_vector(n, 11);
    const ComplexVector fast = tqls::unnormalized_dft(v, ExponentSign::kMinus);
    const ComplexVector slow = naive_dft(v, -1);
    CHECK((fast - slow).norm() <= 1e-11 * slow.norm());
  }
}

TEST_CASE("unitary pair is an isometry and mutual inverse") {
  for (Eigen::Index n : {1, 2, 3, 8, 17, 64, 100}) {
    const ComplexVector v = random_vector(n, 3);
    const ComplexVector fv = tqls::unitary_dft(v);
    CHECK(std::abs(fv.norm() - v.norm()) <= 1e-12 * v.norm());
    CHECK((tqls::unitary_idft(fv) - v).norm() <= 1e-12 * v.norm());
  }
}

TEST_CASE("unitary transform of a basis vector is flat") {
  ComplexVector e = ComplexVector::Zero(8);
  e[0] = 1.0;
  const ComplexVector f = tqls::unitary_dft(e);
  for (const auto& x : f) CHECK(std::abs(x - std::complex<double>(1.0 / std::sqrt(8.0), 0.0)) < 1e-15);
}

TEST_CASE("power-of-two helpers") {
  CHECK(tqls::is_power_of_two(1));
  CHECK(tqls::is_power_of_two(1024));
  CHECK_FALSE(tqls::is_power_of_two(0));
  CHECK_FALSE(tqls::is_power_of_two(6));
  CHECK(tqls::next_power_of_two(5) == 8);
  CHECK(tqls::next_power_of_two(8) == 8);
}

TEST_CASE("non-finite input is rejected") {
  ComplexVector v = ComplexVector::Zero(4);
  v[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS(tqls::require_finite(v, "test"));
}
