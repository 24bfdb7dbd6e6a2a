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
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tqls/analysis.hpp"
#include "tqls/errors.hpp"

using namespace tqls;

namespace {

DenseMatrix dense_circulant(const ComplexVector& top) {
  const Eigen::Index n = top.size();
  DenseMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = top[((c - r) % n + n) % n];
  return m;
}

DenseMatrix dense_toeplitz(const GeneratingFunction& f, Eigen::Index n) {
  DenseMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = fourier_coefficient(f, long(r - c));
  return m;
}

// C_n(f_hat_n)(i, j) = sum of t_k over |k| <= n-1 with k = i - j (mod n).
DenseMatrix dense_wrapped(const GeneratingFunction& f, Eigen::Index n) {
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c)
      for (long k = -(n - 1); k <= n - 1; ++k)
        if (((k - (r - c)) % n + n) % n == 0) m(r, c) += fourier_coefficient(f, k);
  return m;
}

}  // namespace

TEST_CASE("splitmix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(rng.next() == 0x06c45d188009454fULL);
  SplitMix64 u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("right-hand sides") {
  const ComplexVector b = basis_rhs(0, 4);
  CHECK(b[0] == std::complex<double>(1.0));
  CHECK(b.tail(3).norm() == 0.0);
  const ComplexVector w = banded_rhs(1, 8);
  for (int i = 0; i < 8; ++i) {
    const double expected = (i >= 3 && i <= 5) ? 1.0 / std::sqrt(3.0) : 0.0;
    CHECK(std::abs(w[i] - expected) < 1e-15);
  }
  CHECK((random_rhs(42, 4) - random_rhs(42, 4)).norm() == 0.0);
  CHECK((random_rhs(42, 4) - random_rhs(43, 4)).norm() > 0.1);
  CHECK(std::abs(random_rhs(9, 100).norm() - 1.0) < 1e-14);
  CHECK_THROWS_AS(basis_rhs(4, 4), DimensionError);
  CHECK_THROWS_AS(banded_rhs(2, 4), DimensionError);

  const std::string path = "tqls_rhs_test.txt";
  {
    std::ofstream out(path);
    out << "# header\n1.5 -2\n\n0 0.25  # trailing comment\n3e-1 1\n-1 0\n";
  }
  RhsSpec spec;
  spec.kind = RhsKind::kFile;
  spec.path = path;
  const ComplexVector f = make_rhs(spec, 4);
  CHECK(f[0] == std::complex<double>(1.5, -2.0));
  CHECK(f[1] == std::complex<double>(0.0, 0.25));
  CHECK(f[2] == std::complex<double>(0.3, 1.0));
  CHECK(f[3] == std::complex<double>(-1.0, 0.0));
  CHECK_THROWS_AS(make_rhs(spec, 5), DimensionError);
  {
    std::ofstream out(path);
    out << "1 2 3\n";
  }
  CHECK_THROWS_AS(read_rhs_file(path), DomainError);
  std::remove(path.c_str());
  spec.path = "does/not/exist";
  CHECK_THROWS_AS(make_rhs(spec, 4), DomainError);
  CHECK(spec.label() == "file:does/not/exist");
}

TEST_CASE("solution errors against dense oracles") {
  const auto id = solution_errors(GeneratingFunction::constant(1.0), 16, random_rhs(1, 16));
  CHECK(id.epsilon == 0.0);
  CHECK(id.vec_err <= 1e-15);
  CHECK(id.state_err <= 1e-15);

  const auto f = GeneratingFunction::shifted_cosine(2.0, 1.0);
  const ComplexVector b = basis_rhs(0, 4);
  const auto r = solution_errors(f, 4, b);
  const ComplexVector x = dense_toeplitz(f, 4).fullPivLu().solve(b);
  ComplexVector xs(4);
  xs << 7.0 / 12, -1.0 / 6, 1.0 / 12, -1.0 / 6;
  const double vec_err = (xs - x).norm() / x.norm();
  CHECK(r.vec_err == doctest::Approx(vec_err).epsilon(1e-12));
  CHECK(r.state_err == doctest::Approx((xs.normalized() - x.normalized()).norm()).epsilon(1e-12));
  CHECK(r.epsilon == doctest::Approx(std::sqrt(0.5 / 17.5)).epsilon(1e-14));
  const double c = std::cos(std::numbers::pi / 5);
  CHECK(r.kappa == doctest::Approx((2 + c) / (2 - c)).epsilon(1e-13));
  const double ek = r.epsilon * r.kappa;
  CHECK(r.bound_vec == doctest::Approx(ek / (1 - ek)).epsilon(1e-14));
  CHECK(r.bound_state == doctest::Approx(2 * ek / (1 - ek)).epsilon(1e-14));
  CHECK(r.bound_applies());
  CHECK(r.vec_err <= r.bound_vec);
  CHECK(r.state_err <= 2 * r.vec_err + 1e-12);
  CHECK(r.success_probability == doctest::Approx(29.0 / 72.0).epsilon(1e-13));

  const auto vac = solution_errors(GeneratingFunction::kac_murdock_szego(0.5), 8, random_rhs(1, 8));
  CHECK(vac.epsilon * vac.kappa >= 1.0);
  CHECK(std::isinf(vac.bound_vec));
  CHECK_FALSE(vac.bound_applies());
}

TEST_CASE("KMS(0.5) vec_err decreases in n on average over seeds") {
  const auto f = GeneratingFunction::kac_murdock_szego(0.5);
  double previous = INFINITY;
  for (Eigen::Index n : {64, 128, 256}) {
    double mean = 0.0;
    for (std::uint64_t seed = 1; seed <= 16; ++seed) mean += solution_errors(f, n, random_rhs(seed, n)).vec_err / 16.0;
    CHECK(mean < previous);
    previous = mean;
  }
}

TEST_CASE("convergence sweeps") {
  RhsSpec rhs;
  rhs.kind = RhsKind::kRandom;
  rhs.seed = 7;
  const auto cos = convergence_sweep(GeneratingFunction::shifted_cosine(2.0, 1.0), {4, 8, 16, 32}, rhs);
  for (const auto& r : cos) {
    const double n = double(r.n);
    CHECK(r.epsilon == doctest::Approx(std::sqrt(0.5 / (4.5 * n - 0.5))).epsilon(1e-13));
  }
  for (const auto& r : convergence_sweep(GeneratingFunction::constant(2.0), {4, 16, 64}, rhs)) CHECK(r.epsilon == 0.0);

  const auto kms = convergence_sweep(GeneratingFunction::kac_murdock_szego(0.5), {16, 32, 64, 128, 256, 512, 1024}, rhs);
  for (std::size_t i = 1; i < kms.size(); ++i) CHECK(kms[i].epsilon < kms[i - 1].epsilon);
  CHECK(kms.back().epsilon < kms.front().epsilon / 4);
  for (const auto& r : kms) {
    CHECK(r.seed == 7);
    CHECK(r.rhs_kind == "random:7");
    CHECK(r.state_err <= 2 * r.vec_err + 1e-12);
    if (r.bound_applies()) {
      CHECK(r.vec_err <= r.bound_vec + 1e-12);
      CHECK(r.state_err <= r.bound_state + 1e-12);
    }
  }

  RhsSpec basis;
  basis.kind = RhsKind::kBasis;
  basis.index = 10;
  const auto rows = convergence_sweep(GeneratingFunction::kac_murdock_szego(0.5), {8, 16}, basis);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].error);
  CHECK(std::isnan(rows[0].epsilon));
  CHECK_FALSE(rows[1].error);
  CHECK_THROWS(convergence_sweep(GeneratingFunction::constant(1.0), {16, 8}, rhs));
}

TEST_CASE("CSV layout and determinism") {
  RhsSpec basis;
  basis.kind = RhsKind::kBasis;
  basis.index = 10;
  const auto rows = convergence_sweep(GeneratingFunction::kac_murdock_szego(0.5), {8, 16}, basis);
  std::ostringstream a;
  std::ostringstream b;
  write_csv(a, rows);
  write_csv(b, convergence_sweep(GeneratingFunction::kac_murdock_szego(0.5), {8, 16}, basis));
  CHECK(a.str() == b.str());
  std::istringstream lines(a.str());
  std::string header;
  std::string first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "n,epsilon,kappa,vec_err,state_err,bound_vec,bound_state,success_probability,rhs_kind,seed");
  CHECK(first.rfind("8,nan,nan,nan,nan,nan,nan,nan,", 0) == 0);
  CHECK(first.find("error:dimension") != std::string::npos);
}

TEST_CASE("Frobenius decomposition") {
  const auto cos = decompose_frobenius_error(GeneratingFunction::shifted_cosine(2.0, 1.0), 4);
  CHECK(cos.sampling_term <= 1e-12);
  CHECK(cos.wrap_term == doctest::Approx(std::sqrt(0.5 / 17.5)).epsilon(1e-12));
  CHECK(cos.total_rel == doctest::Approx(std::sqrt(0.5 / 17.5)).epsilon(1e-12));
  CHECK(cos.effective_radius == 1);
  CHECK(cos.theorem_bound == doctest::Approx(std::sqrt(1.0 / 3.0)));

  const auto con = decompose_frobenius_error(GeneratingFunction::constant(3.0), 16);
  CHECK(con.sampling_term == 0.0);
  CHECK(con.wrap_term == 0.0);
  CHECK(con.total_rel == 0.0);

  const GeneratingFunction symbols[] = {GeneratingFunction::kac_murdock_szego(0.5), GeneratingFunction::p_series(2.0, 4.0),
                                        GeneratingFunction::band({0.25, 0.5, 2.0, 0.5, 0.25})};
  for (const auto& f : symbols) {
    for (Eigen::Index n : {2, 3, 8, 32, 64}) {
      const auto d = decompose_frobenius_error(f, n);
      CHECK(d.total_rel <= d.sampling_term + d.wrap_term + 1e-10);
      // Dense oracle for both terms.
      const DenseMatrix t = dense_toeplitz(f, n);
      const auto cf = associated_circulant(f, n);
      const DenseMatrix chat = dense_wrapped(f, n);
      const double norm_t = t.norm();
      CHECK(std::abs(d.sampling_term - (dense_circulant(cf.top_row()) - chat).norm() / norm_t) <= 1e-10);
      CHECK(std::abs(d.wrap_term - (chat - t).norm() / norm_t) <= 1e-10);
      CHECK(std::abs(d.total_rel - (dense_circulant(cf.top_row()) - t).norm() / norm_t) <= 1e-10);
    }
  }
  // Band exactness once n > 2r: corner count sum |k| |t_k|^2.
  const auto band = GeneratingFunction::band({0.25, 0.5, 2.0, 0.5, 0.25});
  for (Eigen::Index n : {5, 9, 40}) {
    const auto d = decompose_frobenius_error(band, n);
    const double corners = std::sqrt(2 * (1 * 0.25 + 2 * 0.0625)) / dense_toeplitz(band, n).norm();
    CHECK(d.sampling_term <= 1e-12);
    CHECK(std::abs(d.wrap_term - corners) <= 1e-10);
    CHECK(std::abs(d.wrap_closed_form - corners) <= 1e-10);
  }
  CHECK(effective_radius(GeneratingFunction::kac_murdock_szego(0.5)) == 20);
  // f_hat_2 = 1 + cos(lambda) touches zero: still decomposable, but not solvable.
  const auto kms = GeneratingFunction::kac_murdock_szego(0.5);
  CHECK_NOTHROW(decompose_frobenius_error(kms, 2));
  CHECK_THROWS_AS(circulant_from_sequence(fourier_coefficients(kms, 2)), SingularError);
}

TEST_CASE("rate fitting on synthetic data") {
  const std::vector<Eigen::Index> ns = {64, 128, 256, 512, 1024};
  std::vector<double> good;
  std::vector<double> bad;
  for (auto n : ns) {
    good.push_back(3.0 / double(n));
    bad.push_back(3.0 / std::sqrt(double(n)));
  }
  const auto g = fit_rate(ns, good, RateModel::kInvN);
  CHECK(g.bounded);
  for (double c : g.normalized_constants) CHECK(c == doctest::Approx(3.0));
  CHECK(fit_rate(ns, bad, RateModel::kInvSqrtN).bounded);
  // sqrt(n) growth over 64..16384: last constant is 4x the median.
  const std::vector<Eigen::Index> wide = {64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384};
  std::vector<double> slow;
  for (auto n : wide) slow.push_back(3.0 / std::sqrt(double(n)));
  CHECK_FALSE(fit_rate(wide, slow, RateModel::kInvN).bounded);
  CHECK(to_json(fit_rate(wide, slow, RateModel::kInvN))["verdict"] == "violated");
  CHECK(rate_model(RateModel::kLnnLognOverN, 1024.0) == doctest::Approx(std::log(1024.0) * 10.0 / 1024.0));
  const auto zeros = fit_rate(ns, std::vector<double>(5, 0.0), RateModel::kInvN);
  CHECK(zeros.bounded);
  const auto j = to_json(g);
  CHECK(j["model"] == "inv_n");
  CHECK(j["verdict"] == "bounded");
  CHECK(j["tolerance_factor"] == 2.0);
  CHECK(j["n"].size() == 5);
  CHECK(j["error"].size() == 5);
  CHECK(j["normalized_constant"].size() == 5);
}

TEST_CASE("rate checks") {
  const std::vector<Eigen::Index> ns = {64, 128, 256, 512, 1024};
  CHECK(rate_check_pseries(2.0, 4.0, ns).bounded);
  CHECK(rate_check_pseries(3.0, 3.0, ns).bounded);
  const auto con = rate_check_symbol(GeneratingFunction::constant(2.0), ns);
  CHECK(con.bounded);
  for (double e : con.errors) CHECK(e <= 1e-14);
  const std::vector<Eigen::Index> big = {128, 256, 512, 1024};
  const auto kms = rate_check_banded_rhs(GeneratingFunction::kac_murdock_szego(0.5), 2, big);
  CHECK(kms.bounded);
  CHECK(kms.model == RateModel::kInvSqrtN);
  CHECK(rate_check_banded_rhs(GeneratingFunction::shifted_cosine(2.0, 1.0), 1, big).bounded);
  for (double e : rate_check_banded_rhs(GeneratingFunction::constant(5.0), 3, big).errors) CHECK(e <= 1e-14);
}

TEST_CASE("eigenvalue matching") {
  const auto f = GeneratingFunction::shifted_cosine(2.0, 1.0);
  const double gap = eigenvalue_matching(toeplitz_from_symbol(f, 4), associated_circulant(f, 4));
  CHECK(gap == doctest::Approx(std::cos(2 * std::numbers::pi / 5)).epsilon(1e-12));
  CHECK(gap == doctest::Approx(0.309017).epsilon(1e-6));
  const auto c = GeneratingFunction::constant(2.0);
  CHECK(eigenvalue_matching(toeplitz_from_symbol(c, 8), associated_circulant(c, 8)) <= 1e-14);
  CHECK_THROWS_AS(eigenvalue_matching(toeplitz_from_symbol(c, 8), associated_circulant(c, 4)), DimensionError);
}
