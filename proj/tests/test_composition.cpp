#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pseudosym/coefficients.hpp"
#include "pseudosym/composition.hpp"
#include "pseudosym/errors.hpp"
#include "pseudosym/harmonic.hpp"
#include "pseudosym/splitting.hpp"

using namespace pseudosym;
using C = std::complex<double>;
using V = StateVector<double>;

namespace {

// A non-commuting linear map: x -> A(h) x with A(h) = (1, h; h^2, 1).
FlowMap<double> probe_flow() {
  return FlowMap<double>(
      [](const V& x, C h) { return V{x[0] + h * x[1], h * h * x[0] + x[1]}; },
      MethodMeta::symmetric(2), "probe");
}

double dist(const V& a, const V& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("compose_schedule applies the rightmost coefficient first") {
  const auto base = probe_flow();
  const std::vector<C> g{C(0.3, 0.1), C(0.7, -0.1)};
  const auto phi = compose_schedule<double>(base, g, MethodMeta{1});
  const V x{1.0, 2.0};
  const C tau(0.4);
  const V expected = base(base(x, g[1] * tau), g[0] * tau);
  CHECK(dist(phi(x, tau), expected) < 1e-15);
  const V wrong = base(base(x, g[0] * tau), g[1] * tau);
  CHECK(dist(phi(x, tau), wrong) > 1e-4);
}

TEST_CASE("schedule validation") {
  const auto base = probe_flow();
  CHECK_THROWS_AS(compose_schedule<double>(base, std::vector<C>{}, MethodMeta{1}), ValidationError);
  CHECK_THROWS_AS(compose_schedule<double>(base, std::vector<C>{0.5, 0.6}, MethodMeta{1}),
                  ValidationError);
  CHECK_THROWS_AS(compose_schedule<double>(base, std::vector<C>{C(NAN, 0), 1.0}, MethodMeta{1}),
                  ValidationError);
  try {
    compose_schedule<double>(base, std::vector<C>{0.5, 0.6}, MethodMeta{1});
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("0.1") != std::string::npos);
  }
}

TEST_CASE("composition at step zero is the identity") {
  const auto family = recursive_family(ho_strang_flow<double>(), 3);
  const V x{0.3, -1.2};
  for (const auto& level : family.levels) CHECK(dist(level(x, 0.0), x) < 1e-15);
}

TEST_CASE("double jump") {
  const auto dj = double_jump(ho_strang_flow<double>());
  CHECK(dj.meta().order == 3);
  CHECK(dj.meta().pseudo_symmetry_order == 3);
  const auto g = gamma_smallest_phase<double>(2);
  const C tau(0.3);
  const auto expected = ho_strang<double>(g * tau) * ho_strang<double>(std::conj(g) * tau);
  const auto got = matrix_of(dj, tau);
  CHECK((got - expected).max_abs() < 1e-15);
  CHECK_THROWS_AS(double_jump(dj), DomainError);
}

TEST_CASE("projected double-jump orders") {
  // even base of order 2n with q >= 2n+2
  CHECK(projected_double_jump_meta(MethodMeta::symmetric(2)) == MethodMeta{4, 7, 7, false});
  CHECK(projected_double_jump_meta(MethodMeta::symmetric(4)) == MethodMeta{6, 11, 11, false});
  CHECK(projected_double_jump_meta(MethodMeta{4, 7, 7, false}) == MethodMeta{6, 7, 7, false});
  CHECK(projected_double_jump_meta(MethodMeta{6, 7, 7, false}) == MethodMeta{7, 7, 7, false});
  CHECK(projected_double_jump_meta(MethodMeta{7, 7, 7, false}).order_capped);
}

TEST_CASE("real projection: real steps give exactly real output") {
  const auto s4 = s4sim(ho_drift_flow<double>(), ho_kick_flow<double>());
  const auto r = real_projection(s4);
  const V x{1.5, -0.5};
  const V y = r(x, 0.2);
  for (const auto& v : y) CHECK(v.imag() == 0.0);
  const V raw = s4(x, 0.2);
  CHECK(std::abs(raw[0].imag()) > 1e-8);
  CHECK(std::abs(y[0] - raw[0].real()) < 1e-15);
  CHECK_THROWS_AS(r(V{C(1, 0.1), 0.0}, 0.2), DomainError);
}

TEST_CASE("real projection: complex steps continue the map analytically") {
  // 1/2 (psi_tau(x) + conj(psi_conj(tau)(conj x))) with x real
  const auto s4 = s4sim(ho_drift_flow<double>(), ho_kick_flow<double>());
  const auto r = real_projection(s4);
  const C tau(0.1, 0.05);
  const V x{1.0, 0.0};
  const V y = r(x, tau);
  const V a = s4(x, tau);
  const V b = s4(x, std::conj(tau));
  for (std::size_t i = 0; i < 2; ++i) CHECK(std::abs(y[i] - 0.5 * (a[i] + std::conj(b[i]))) < 1e-15);
}

TEST_CASE("recursive family from Strang") {
  const auto family = recursive_family(ho_strang_flow<double>(), 3);
  CHECK(family.declared_orders() == std::vector<int>{4, 6, 7});
  CHECK(family.levels[2].meta().order_capped);
  CHECK(family.warnings.size() == 1);
  CHECK(family.coefficient_products[0].size() == 2);
  CHECK(family.coefficient_products[2].size() == 8);
  for (const auto& level : family.coefficient_products) {
    C sum = 0;
    for (const auto& p : level) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-14);
  }
  const auto args = coefficient_arguments(family);
  CHECK(std::abs(args.max_argument - std::numbers::pi / 2 * 71.0 / 105.0) < 1e-12);
  CHECK(args.all_positive_real);
}

TEST_CASE("recursive family from s4sim") {
  const auto s4 = s4sim(ho_drift_flow<double>(), ho_kick_flow<double>());
  const auto family = recursive_family(real_projection(s4), 4);
  CHECK(family.declared_orders() == std::vector<int>{6, 8, 10, 11});
  const auto args = coefficient_arguments(family);
  CHECK(args.max_argument < 0.96 * std::numbers::pi / 2);
  CHECK(args.all_positive_real);
}

TEST_CASE("recursive family preconditions") {
  CHECK_THROWS_AS(recursive_family(ho_strang_flow<double>(), 0), DomainError);
  const auto odd = ho_strang_flow<double>().with_meta(MethodMeta{3, 3, 3, false});
  CHECK_THROWS_AS(recursive_family(odd, 1), DomainError);
  const auto weak = ho_strang_flow<double>().with_meta(MethodMeta{2, 2, 2, false});
  CHECK_THROWS_AS(recursive_family(weak, 1), DomainError);
}

TEST_CASE("Strang-based levels reach their declared order on the oscillator") {
  const auto family = recursive_family(ho_strang_flow<double>(), 2);
  // local error |M_H - psi| ratio between tau and tau/2 ~ 2^(p+1)
  for (std::size_t i = 0; i < family.levels.size(); ++i) {
    const int p = family.levels[i].meta().order;
    const double e1 = (ho_exact<double>(0.2) - matrix_of(family.levels[i], C(0.2))).max_abs();
    const double e2 = (ho_exact<double>(0.1) - matrix_of(family.levels[i], C(0.1))).max_abs();
    CHECK(std::log2(e1 / e2) > p + 1 - 0.25);
  }
}
