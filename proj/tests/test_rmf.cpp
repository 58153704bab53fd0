#include <doctest.h>

#include <cmath>
#include <complex>

#include "rmfm/rmf.hpp"

using namespace rmfm;
using rmf::RmfKind;

TEST_CASE("X(1) = 1 and unit modulus") {
  arith::FactorSieve sieve(500);
  for (auto kind : {RmfKind::Rademacher, RmfKind::Steinhaus}) {
    auto s = rmf::sample_rmf(kind, 500, {123, 0}, sieve);
    CHECK(s.value(1) == std::complex<double>(1.0, 0.0));
    for (std::uint64_t n = 1; n <= 500; ++n)
      CHECK(std::abs(std::abs(s.value(n)) - 1.0) <= 1e-12);
  }
}

TEST_CASE("N=1 sample") {
  arith::FactorSieve sieve(1);
  auto s = rmf::sample_rmf(RmfKind::Steinhaus, 1, {9, 0}, sieve);
  CHECK(s.values.size() == 1);
  CHECK(s.value(1) == std::complex<double>(1.0, 0.0));
  CHECK(rmf::verify_multiplicativity(s, 5));  // vacuous
}

TEST_CASE("multiplicativity forced by construction") {
  arith::FactorSieve sieve(100000);
  auto rad = rmf::sample_rmf(RmfKind::Rademacher, 12, {77, 3}, sieve);
  // X(12) = X(2)^2 X(3) = X(3)
  CHECK(rad.sign_values[12] == rad.sign_values[3]);
  CHECK(rad.sign_values[6] == rad.sign_values[2] * rad.sign_values[3]);
  // Rademacher: X(n^2) = 1
  for (std::uint64_t n = 1; n * n <= 12; ++n) CHECK(rad.sign_values[n * n] == 1);

  auto st = rmf::sample_rmf(RmfKind::Steinhaus, 9, {77, 4}, sieve);
  CHECK(std::abs(st.value(9) - st.value(3) * st.value(3)) <= 1e-12);

  auto big = rmf::sample_rmf(RmfKind::Steinhaus, 100000, {5, 0}, sieve);
  CHECK(rmf::verify_multiplicativity(big, 10000));
}

TEST_CASE("determinism of seeded samples") {
  arith::FactorSieve sieve(2000);
  for (auto kind : {RmfKind::Rademacher, RmfKind::Steinhaus}) {
    auto a = rmf::sample_rmf(kind, 2000, {42, 7}, sieve);
    auto b = rmf::sample_rmf(kind, 2000, {42, 7}, sieve);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
    auto c = rmf::sample_rmf(kind, 2000, {42, 8}, sieve);
    CHECK((a.values - c.values).cwiseAbs().maxCoeff() > 0.0);
  }
}

TEST_CASE("prime draws do not depend on N") {
  arith::FactorSieve sieve(100);
  auto small = rmf::sample_rmf(RmfKind::Steinhaus, 50, {11, 2}, sieve);
  auto large = rmf::sample_rmf(RmfKind::Steinhaus, 100, {11, 2}, sieve);
  for (std::uint64_t n = 1; n <= 50; ++n) CHECK(small.value(n) == large.value(n));
}

TEST_CASE("empirical mean of X(p) near zero") {
  arith::FactorSieve sieve(10);
  const int trials = 10000;
  for (auto kind : {RmfKind::Rademacher, RmfKind::Steinhaus}) {
    double sum_re = 0.0, sum_im = 0.0;
    for (int t = 0; t < trials; ++t) {
      auto s = rmf::sample_rmf(kind, 7, {2024, static_cast<std::uint64_t>(t)}, sieve);
      sum_re += s.value(7).real();
      sum_im += s.value(7).imag();
    }
    // |X(p)| = 1, so the standard error is at most 1/sqrt(trials).
    double five_se = 5.0 / std::sqrt(static_cast<double>(trials));
    CHECK(std::abs(sum_re / trials) <= five_se);
    CHECK(std::abs(sum_im / trials) <= five_se);
  }
}

TEST_CASE("fekete coefficients") {
  CHECK(rmf::fekete_coeffs(5) == std::vector<int>{1, -1, -1, 1});
  CHECK(rmf::fekete_coeffs(3) == std::vector<int>{1, -1});
  CHECK_THROWS_AS(rmf::fekete_coeffs(9), std::invalid_argument);
}

TEST_CASE("liouville coefficients") {
  arith::FactorSieve sieve(10);
  CHECK(rmf::liouville_coeffs(4, sieve) == std::vector<int>{1, -1, -1, 1});
}
