#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pseudosym/coefficients.hpp"
#include "pseudosym/errors.hpp"

using namespace pseudosym;
using C = std::complex<double>;

namespace {

// All roots of a polynomial with coefficients c[0] + c[1] z + ... (c.back() != 0).
std::vector<C> durand_kerner(std::vector<C> c) {
  const std::size_t n = c.size() - 1;
  for (auto& v : c) v /= c.back();
  std::vector<C> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = std::pow(C(0.4, 0.9), double(i));
  auto eval = [&](C x) {
    C r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  };
  for (int it = 0; it < 2000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      C den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(z[i]) / den;
    }
  }
  return z;
}

std::vector<double> binomial_row(int n) {
  std::vector<double> row(n + 1, 1.0);
  for (int i = 1; i < n; ++i) row[i] = row[i - 1] * (n - i + 1) / i;
  return row;
}

// Coefficients of a z^(m) + b (1 - c z)^m.
std::vector<C> power_sum_poly(int m, C a, C b, C c) {
  const auto binom = binomial_row(m);
  std::vector<C> p(m + 1);
  for (int i = 0; i <= m; ++i) p[i] = b * binom[i] * std::pow(-c, i);
  p[m] += a;
  while (std::abs(p.back()) < 1e-14) p.pop_back();
  return p;
}

}  // namespace

TEST_CASE("smallest-phase double-jump coefficient satisfies both conditions") {
  for (int k : {1, 2, 3, 4, 5, 6, 8, 10}) {
    const C g = gamma_smallest_phase<double>(k);
    CHECK(std::abs(g + std::conj(g) - 1.0) < 1e-14);
    CHECK(std::abs(std::pow(g, k + 1) + std::pow(std::conj(g), k + 1)) < 1e-13);
    CHECK(std::arg(g) == doctest::Approx(std::numbers::pi / (2 * (k + 1))).epsilon(1e-13));
  }
}

TEST_CASE("known values") {
  const C g2 = gamma_smallest_phase<double>(2);
  CHECK(g2.real() == doctest::Approx(0.5));
  CHECK(g2.imag() == doctest::Approx(std::sqrt(3.0) / 6).epsilon(1e-14));
  const C g4 = gamma_smallest_phase<double>(4);
  CHECK(g4.imag() == doctest::Approx(0.5 * std::tan(std::numbers::pi / 10)).epsilon(1e-14));
}

TEST_CASE("branch ranges") {
  CHECK(double_jump_branch_range(2) == std::pair{-1, 0});
  CHECK(double_jump_branch_range(4) == std::pair{-2, 1});
  CHECK(double_jump_branch_range(3) == std::pair{-2, 1});
  CHECK(double_jump_branch_range(5) == std::pair{-3, 2});
}

TEST_CASE("double-jump branches are exactly the roots of the order polynomial") {
  for (int k : {2, 3, 4, 5, 6}) {
    // gamma^(k+1) + (1 - gamma)^(k+1) = 0
    const auto roots = durand_kerner(power_sum_poly(k + 1, 1.0, 1.0, 1.0));
    const auto [lo, hi] = double_jump_branch_range(k);
    CHECK(roots.size() == std::size_t(hi - lo + 1));
    for (int ell = lo; ell <= hi; ++ell) {
      const C g = gamma_double_jump<double>(k, ell);
      double best = 1e300;
      for (const auto& r : roots) best = std::min(best, std::abs(r - g));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("double-jump errors") {
  CHECK_THROWS_AS(gamma_double_jump<double>(0, 0), DomainError);
  CHECK_THROWS_AS(gamma_double_jump<double>(4, 2), DomainError);
  CHECK_THROWS_AS(gamma_double_jump<double>(4, -3), DomainError);
  CHECK_NOTHROW(gamma_double_jump<double>(4, -2));
  CHECK_THROWS_AS(gamma_smallest_phase<double>(-1), DomainError);
}

TEST_CASE("triple-jump coefficients") {
  for (int k : {2, 4, 6, 8}) {
    const auto [g1, g2] = gamma_triple_jump<double>(k);
    CHECK(std::abs(2.0 * g1 + g2 - 1.0) < 1e-14);
    CHECK(std::abs(2.0 * std::pow(g1, k + 1) + std::pow(g2, k + 1)) < 1e-13);
    // oracle: g1 is a root of 2 z^(k+1) + (1 - 2z)^(k+1)
    const auto roots = durand_kerner(power_sum_poly(k + 1, 2.0, 1.0, 2.0));
    double best = 1e300;
    for (const auto& r : roots) best = std::min(best, std::abs(r - g1));
    CHECK(best < 1e-9);
    // smallest phase among roots with positive imaginary part
    double min_arg = 1e300;
    for (const auto& r : roots)
      if (r.imag() > 1e-9) min_arg = std::min(min_arg, std::abs(std::arg(r)));
    CHECK(std::abs(std::arg(g1)) == doctest::Approx(min_arg).epsilon(1e-9));
  }
}

TEST_CASE("order condition residuals") {
  const C g = gamma_smallest_phase<double>(4);
  const std::vector<C> pair{g, std::conj(g)};
  const auto r = order_condition_residuals<double>(pair, 4);
  CHECK(std::abs(r.sum_residual) < 1e-15);
  CHECK(std::abs(r.power_residual) < 1e-13);
  const std::vector<C> bad{0.5, 0.6};
  CHECK(std::abs(order_condition_residuals<double>(bad, 2).sum_residual - 0.1) < 1e-15);
  CHECK_THROWS_AS(order_condition_residuals<double>(std::vector<C>{}, 2), ValidationError);
}

TEST_CASE("extended precision agrees with double") {
  for (int k : {2, 4, 6}) {
    const auto gl = gamma_smallest_phase<long double>(k);
    const auto gd = gamma_smallest_phase<double>(k);
    CHECK(std::abs(double(gl.imag()) - gd.imag()) < 1e-15);
    CHECK(std::abs(std::pow(gl, k + 1) + std::pow(std::conj(gl), k + 1)) < 1e-17L);
  }
}
