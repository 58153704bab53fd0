#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rmfm/poly.hpp"
#include "rmfm/rmf.hpp"

using namespace rmfm;
using Complex = std::complex<double>;
using rmf::RmfKind;

namespace {

// Direct-summation oracle for P(t/M).
Complex eval_direct(const poly::CoeffVector& c, std::size_t m, std::size_t t) {
  Complex acc(0.0, 0.0);
  for (Eigen::Index i = 0; i < c.coeffs.size(); ++i) {
    double phase = 2.0 * std::numbers::pi * static_cast<double>((i + 1) * t) /
                   static_cast<double>(m);
    acc += c.coeffs(i) * Complex(std::cos(phase), std::sin(phase));
  }
  return acc;
}

rmf::RmfSample fixed_sample_n2() {
  // X = (1, -1): force X(2) = -1 by scanning seeds.
  arith::FactorSieve sieve(2);
  for (std::uint64_t t = 0;; ++t) {
    auto s = rmf::sample_rmf(RmfKind::Rademacher, 2, {100, t}, sieve);
    if (s.sign_values[2] == -1) return s;
  }
}

}  // namespace

TEST_CASE("eval_grid single harmonic") {
  arith::FactorSieve sieve(1);
  auto s = rmf::sample_rmf(RmfKind::Rademacher, 1, {1, 0}, sieve);
  auto values = poly::eval_grid(poly::coeffs_from_sample(s), 4);
  CHECK(std::abs(values(0) - Complex(1, 0)) <= 1e-12);
  CHECK(std::abs(values(1) - Complex(0, 1)) <= 1e-12);
  CHECK(std::abs(values(2) - Complex(-1, 0)) <= 1e-12);
  CHECK(std::abs(values(3) - Complex(0, -1)) <= 1e-12);
}

TEST_CASE("eval_grid equals direct summation") {
  arith::FactorSieve sieve(200);
  auto s = rmf::sample_rmf(RmfKind::Steinhaus, 200, {3, 1}, sieve);
  auto c = poly::coeffs_from_sample(s);
  auto values = poly::eval_grid(c, 512);
  for (std::size_t t : {std::size_t{0}, std::size_t{1}, std::size_t{100}, std::size_t{511}})
    CHECK(std::abs(values(static_cast<Eigen::Index>(t)) - eval_direct(c, 512, t)) <= 1e-9);
  // P(0) = N^{-1/2} sum X(n)
  Complex p0 = s.values.sum() / std::sqrt(200.0);
  CHECK(std::abs(values(0) - p0) <= 1e-9);
  CHECK_THROWS_AS(poly::eval_grid(c, 200), std::invalid_argument);
}

TEST_CASE("N=2 worked example") {
  auto s = fixed_sample_n2();
  auto c = poly::coeffs_from_sample(s);
  auto values = poly::eval_grid(c, 4);
  CHECK(std::abs(values(0)) <= 1e-12);                    // P(0) = 0
  CHECK(std::abs(values(2) - Complex(-std::sqrt(2.0), 0)) <= 1e-12);  // P(1/2) = -2/sqrt(2)

  // m^{(2,2)} = 6/4 = 1.5 = integral of (1 - cos 2 pi theta)^2
  auto exact = poly::moment_exact(s, 2, 2);
  CHECK(exact.value.real() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(std::abs(exact.value.imag()) <= 1e-12);
  auto grid = poly::moment_grid(s, 2, 2, 32);
  CHECK(std::abs(grid.value - exact.value) <= 1e-10);
}

TEST_CASE("power_coeffs") {
  std::vector<int> x{1, -1};
  CHECK(poly::power_coeffs(x, 1) == std::vector<std::int64_t>{1, -1});
  // (z - z^2)^2 = z^2 - 2 z^3 + z^4
  CHECK(poly::power_coeffs(x, 2) == std::vector<std::int64_t>{1, -2, 1});

  // Sum of coefficients = (sum x)^j, evaluated at z = 1.
  std::vector<int> y{1, -1, 1, 1, -1};
  for (int j = 1; j <= 4; ++j) {
    auto c = poly::power_coeffs(y, j);
    std::int64_t sum = 0;
    for (auto v : c) sum += v;
    std::int64_t base = 0;
    for (int v : y) base += v;
    std::int64_t expect = 1;
    for (int i = 0; i < j; ++i) expect *= base;
    CHECK(sum == expect);
  }
}

TEST_CASE("trivial moments") {
  arith::FactorSieve sieve(64);
  for (auto kind : {RmfKind::Rademacher, RmfKind::Steinhaus}) {
    auto s = rmf::sample_rmf(kind, 64, {8, 2}, sieve);
    CHECK(poly::moment_exact(s, 0, 0).value == Complex(1.0, 0.0));
    CHECK(poly::moment_exact(s, 2, 0).value == Complex(0.0, 0.0));
    // Parseval: m^{(1,1)} = 1 exactly
    CHECK(std::abs(poly::moment_exact(s, 1, 1).value - Complex(1, 0)) <= 1e-12);
    CHECK(std::abs(poly::moment_grid(s, 0, 0, 512).value - Complex(1, 0)) <= 1e-12);
  }
  // N = 1: m^{(j,k)} = 1 if j == k else 0
  arith::FactorSieve s1(1);
  auto one = rmf::sample_rmf(RmfKind::Steinhaus, 1, {8, 0}, s1);
  for (int j = 0; j <= 3; ++j)
    for (int k = 0; k <= 3; ++k) {
      auto v = poly::moment_exact(one, j, k).value;
      CHECK(std::abs(v - Complex(j == k ? 1.0 : 0.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("method agreement and conjugate symmetry") {
  arith::FactorSieve sieve(128);
  for (auto kind : {RmfKind::Rademacher, RmfKind::Steinhaus}) {
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      auto s = rmf::sample_rmf(kind, 128, {55, trial}, sieve);
      for (auto [j, k] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {2, 3}}) {
        auto e = poly::moment_exact(s, j, k);
        auto g = poly::moment_grid(s, j, k, poly::default_grid_size(128, j, k));
        double scale = std::max(1.0, std::abs(e.value));
        CHECK(std::abs(e.value - g.value) / scale <= 1e-8);
        // m^{(j,k)} = conj(m^{(k,j)})
        auto swapped = poly::moment_exact(s, k, j);
        CHECK(std::abs(e.value - std::conj(swapped.value)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("Holder monotonicity of normalized moments") {
  arith::FactorSieve sieve(100);
  auto s = rmf::sample_rmf(RmfKind::Steinhaus, 100, {19, 0}, sieve);
  double prev = 0.0;
  for (int k = 1; k <= 4; ++k) {
    double mk = poly::moment_grid(s, k, k, poly::default_grid_size(100, k, k)).value.real();
    double root = std::pow(mk, 1.0 / k);
    CHECK(root >= prev - 1e-9);
    prev = root;
  }
}

TEST_CASE("moment preconditions") {
  arith::FactorSieve sieve(32);
  auto s = rmf::sample_rmf(RmfKind::Rademacher, 32, {4, 0}, sieve);
  CHECK_THROWS_AS(poly::moment_grid(s, 2, 2, 128), std::invalid_argument);  // 128 <= 4*32
  CHECK_THROWS_AS(poly::moment_exact(s, 3, 3, /*memory_cap=*/16), std::length_error);
}

TEST_CASE("certified sup-norm") {
  // N = 1: |P| == 1 everywhere.
  arith::FactorSieve s1(1);
  auto one = rmf::sample_rmf(RmfKind::Rademacher, 1, {2, 0}, s1);
  auto b1 = poly::sup_norm_certified(poly::coeffs_from_sample(one), 64);
  CHECK(b1.grid_max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b1.certified_upper >= 1.0);
  CHECK(b1.certified_upper <= 1.0 / (1.0 - std::numbers::pi / 64.0) + 1e-12);

  // N = 2, X = (1, -1): true sup = sqrt(2) at theta = 1/2.
  auto s = fixed_sample_n2();
  auto b2 = poly::sup_norm_certified(poly::coeffs_from_sample(s), 256);
  CHECK(b2.grid_max <= std::sqrt(2.0) + 1e-12);
  CHECK(b2.certified_upper >= std::sqrt(2.0) - 1e-12);

  CHECK_THROWS_AS(poly::sup_norm_certified(poly::coeffs_from_sample(s), 6),
                  std::invalid_argument);

  // L^{2k} lower bounds: (m^{(k)})^{1/2k} <= certified upper.
  arith::FactorSieve sieve(64);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    auto r = rmf::sample_rmf(RmfKind::Steinhaus, 64, {31, trial}, sieve);
    auto bound = poly::sup_norm_certified(poly::coeffs_from_sample(r), 1024);
    for (int k = 1; k <= 4; ++k) {
      double mk = poly::moment_grid(r, k, k, poly::default_grid_size(64, k, k)).value.real();
      CHECK(std::pow(mk, 1.0 / (2 * k)) <= bound.certified_upper + 1e-9);
    }
  }
}

TEST_CASE("short interval Lp") {
  arith::FactorSieve sieve(100);
  auto s = rmf::sample_rmf(RmfKind::Steinhaus, 100, {12, 0}, sieve);
  // L = 1: single unit-modulus term, any p.
  for (double p : {1.0, 2.0, 4.0, 7.5})
    CHECK(poly::short_interval_lp(s, 10, 1, p, 256) == doctest::Approx(1.0).epsilon(1e-10));
  // p = 2: Parseval gives exactly L.
  CHECK(poly::short_interval_lp(s, 20, 13, 2.0, 256) == doctest::Approx(13.0).epsilon(1e-9));
  CHECK_THROWS_AS(poly::short_interval_lp(s, 95, 10, 2.0, 256), std::out_of_range);
}

TEST_CASE("fekete and liouville coefficient vectors") {
  auto fek = poly::coeffs_from_signs(rmf::fekete_coeffs(5), poly::CoeffOrigin::Fekete);
  CHECK(fek.limit == 4);
  // normalization 1/sqrt(p-1)
  CHECK(std::abs(fek.coeffs(0) - Complex(0.5, 0.0)) <= 1e-12);
  double l2 = 0.0;
  auto values = poly::eval_grid(fek, 64);
  for (Eigen::Index t = 0; t < values.size(); ++t) l2 += std::norm(values(t));
  CHECK(l2 / 64.0 == doctest::Approx(1.0).epsilon(1e-10));
}
