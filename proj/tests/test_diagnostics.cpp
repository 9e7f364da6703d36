#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pseudosym/composition.hpp"
#include "pseudosym/diagnostics.hpp"
#include "pseudosym/errors.hpp"
#include "pseudosym/harmonic.hpp"
#include "pseudosym/splitting.hpp"

using namespace pseudosym;
using C = std::complex<double>;

namespace {

std::vector<double> dyadic(double first, int count) {
  std::vector<double> out;
  for (int j = 0; j < count; ++j) out.push_back(std::ldexp(first, -j));
  return out;
}

Observable<double> ho_energy_obs() {
  return [](std::span<const double> x) { return ho_energy<double>(x); };
}

}  // namespace

TEST_CASE("power_law_fit recovers exact power laws") {
  const auto taus = dyadic(0.5, 6);
  for (int p = 2; p <= 8; ++p) {
    std::vector<double> e;
    for (double t : taus) e.push_back(3.5 * std::pow(t, p));
    const auto fit = power_law_fit(taus, e);
    CHECK(std::abs(fit.exponent - p) < 1e-10);
    CHECK(std::abs(fit.coefficient / 3.5 - 1) < 1e-10);
    CHECK(fit.residual < 1e-12);
  }
  std::vector<double> cube;
  for (double t : taus) cube.push_back(t * t * t);
  const auto f3 = power_law_fit(taus, cube);
  CHECK(f3.exponent == doctest::Approx(3));
  CHECK(f3.coefficient == doctest::Approx(1));
}

TEST_CASE("power_law_fit errors") {
  CHECK_THROWS_AS(power_law_fit(std::vector<double>{1, 2}, std::vector<double>{1, 2}), DomainError);
  CHECK_THROWS_AS(power_law_fit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 0, 2}),
                  DomainError);
  CHECK_THROWS_AS(power_law_fit(std::vector<double>{1, -2, 3}, std::vector<double>{1, 1, 2}),
                  DomainError);
}

TEST_CASE("fit_order drops samples near the roundoff floor and narrows the window") {
  const auto taus = dyadic(0.8, 8);
  std::vector<double> e;
  for (double t : taus) e.push_back(std::max(1e-3 * std::pow(t, 6), 1e-15));
  FitOptions opt;
  opt.roundoff_floor = 1e-16;
  const auto fit = fit_order(taus, e, opt);
  CHECK(fit.exponent == doctest::Approx(6).epsilon(1e-10));
  CHECK(fit.samples_dropped_floor > 0);

  std::vector<double> mixed;
  for (double t : taus) mixed.push_back(std::pow(t, 4) + 50 * std::pow(t, 6));
  const auto narrowed = fit_order(taus, mixed, FitOptions{});
  CHECK(narrowed.residual < 0.02);
  CHECK(narrowed.samples_dropped_window > 0);
  CHECK(narrowed.exponent == doctest::Approx(4).epsilon(0.02));

  opt.roundoff_floor = 1;
  CHECK_THROWS_AS(fit_order(taus, e, opt), DomainError);
}

TEST_CASE("leading_term_fit removes the next-order bias and keeps the sign") {
  const auto taus = dyadic(0.8, 6);
  std::vector<double> e;
  for (double t : taus) e.push_back(-std::pow(t, 5) / 180 + 0.01 * std::pow(t, 7));
  std::vector<double> magnitude;
  for (double v : e) magnitude.push_back(std::abs(v));
  const auto free = power_law_fit(taus, magnitude);
  const auto lead = leading_term_fit(taus, e);
  CHECK(lead.coefficient == doctest::Approx(-1.0 / 180).epsilon(1e-9));
  CHECK(std::abs(free.coefficient - 1.0 / 180) > std::abs(std::abs(lead.coefficient) - 1.0 / 180));
  CHECK(std::round(lead.exponent) == 5);
}

TEST_CASE("step_count") {
  CHECK(step_count(20.0, 0.08) == 250);
  CHECK(step_count(1.0, 0.05 / 16) == 320);
  CHECK_THROWS_AS(step_count(1.0, 0.3), ValidationError);
  CHECK_THROWS_AS(step_count(1.0, -0.1), ValidationError);
}

TEST_CASE("integrate") {
  const std::vector<double> x0{2.5, 0};
  SUBCASE("identity method gives a constant trajectory") {
    const auto tr = integrate(FlowMap<double>::identity(), std::span<const double>(x0), 0.1, 5);
    CHECK(tr.times.size() == 6);
    for (const auto& s : tr.states) CHECK(s == x0);
  }
  SUBCASE("exact oscillator is periodic") {
    const double tau = 2 * std::numbers::pi / 100;
    const auto tr = integrate(ho_exact_flow<double>(), std::span<const double>(x0), tau, 100);
    CHECK(std::abs(tr.states.back()[0] - 2.5) < 1e-12);
    CHECK(std::abs(tr.states.back()[1]) < 1e-12);
    const auto err = energy_error_series(tr, ho_energy_obs());
    for (double v : err) CHECK(v < 1e-14);
  }
  SUBCASE("record stride and observable") {
    const auto tr = integrate(ho_strang_flow<double>(), std::span<const double>(x0), 0.1, 10,
                              ho_energy_obs(), 4);
    CHECK(tr.times.size() == 4);  // 0, 4, 8, 10
    CHECK(tr.times.back() == doctest::Approx(1.0));
    CHECK(tr.observables.at("observable").size() == 4);
  }
  SUBCASE("singularities carry the step index") {
    const FlowMap<double> ramp(
        [](const StateVector<double>& x, C tau) {
          if ((x[0] + tau).real() > 0.35) throw SingularityError("ramp", 0);
          return StateVector<double>{x[0] + tau};
        },
        MethodMeta::symmetric(kUnbounded));
    const std::vector<double> r0{0.0};
    try {
      integrate(ramp, std::span<const double>(r0), 0.1, 10);
      FAIL("expected a singularity");
    } catch (const SingularityError& e) {
      CHECK(e.step() == 4);
    }
  }
  SUBCASE("a method that leaves the real axis is rejected") {
    const auto s4 = s4sim(ho_drift_flow<double>(), ho_kick_flow<double>());
    CHECK_THROWS_AS(integrate(s4, std::span<const double>(x0), 0.1, 2), DomainError);
  }
}

TEST_CASE("energy error series") {
  Trajectory<double> tr;
  tr.states = {{1, 1}, {1, 2}};
  tr.times = {0, 1};
  const auto e = energy_error_series(tr, ho_energy_obs());
  CHECK(e[1] == doctest::Approx(1.5));
  Trajectory<double> zero;
  zero.states = {{0, 0}};
  zero.times = {0};
  CHECK_THROWS_AS(energy_error_series(zero, ho_energy_obs()), DomainError);
}

TEST_CASE("successive error of an exact flow is at roundoff") {
  const std::vector<double> x0{1, 0};
  CHECK(successive_error(ho_exact_flow<double>(), std::span<const double>(x0), 0.1, 1.0) < 1e-14);
  const double e1 = successive_error(ho_strang_flow<double>(), std::span<const double>(x0), 0.1, 1.0);
  const double e2 = successive_error(ho_strang_flow<double>(), std::span<const double>(x0), 0.05, 1.0);
  CHECK(std::log2(e1 / e2) == doctest::Approx(2).epsilon(0.02));
}

TEST_CASE("defects of symmetric and exact maps") {
  const auto taus = dyadic(0.8, 6);
  const auto strang_sym = matrix_symmetry_defect(ho_strang_flow<double>(), taus);
  for (double v : strang_sym.values) CHECK(v < 1e-14);
  CHECK_FALSE(strang_sym.fit.has_value());
  const auto exact_det = matrix_symplecticity_defect(ho_exact_flow<double>(), taus);
  for (double v : exact_det.values) CHECK(v < 1e-14);
  const std::vector<double> x0{2.5, 0};
  const auto gen = symmetry_defect(ho_strang_flow<double>(), std::span<const double>(x0), taus);
  for (double v : gen.values) CHECK(v < 1e-14);
}

TEST_CASE("finite-difference symplecticity agrees with the determinant for 2x2 maps") {
  const auto family = recursive_family(ho_strang_flow<double>(), 1);
  const std::vector<double> x0{0.3, 0.2};
  const std::vector<double> taus{0.8, 0.4};
  const auto fd = symplecticity_defect(family.levels[0], std::span<const double>(x0), taus);
  const auto det = matrix_symplecticity_defect(family.levels[0], taus);
  // J^T S J - S = (det J - 1) S for 2x2 maps
  for (std::size_t i = 0; i < taus.size(); ++i)
    CHECK(std::abs(fd.values[i] - det.values[i]) < 1e-9);
  CHECK_THROWS_AS(symplecticity_defect(family.levels[0], std::span<const double>(std::vector<double>{1, 2, 3}), taus),
                  DomainError);
}

TEST_CASE("pseudo-symmetry defect of the first level grows like tau^8") {
  const auto taus = dyadic(0.8, 6);
  const auto family = recursive_family(ho_strang_flow<double>(), 1);
  const auto d = matrix_symmetry_defect(family.levels[0], taus);
  REQUIRE(d.fit.has_value());
  CHECK(d.fit->exponent >= 7.75);
}

TEST_CASE("measured order is at least the declared order on the oscillator") {
  const auto taus = dyadic(0.8, 6);
  const auto family = recursive_family(ho_strang_flow<double>(), 3);
  for (const auto& level : family.levels) {
    const auto fit = truncation_matrix_fit(level, taus);
    double local = 1e9;
    for (const auto& row : fit)
      for (const auto& entry : row)
        if (!entry.zero_at_this_order) local = std::min(local, entry.fit.exponent);
    CHECK(local - 1 >= level.meta().order - 0.25);
  }
  // s4sim levels 1 and 2 need extended precision to clear the roundoff floor
  using L = long double;
  const auto s4 = s4sim(ho_drift_flow<L>(), ho_kick_flow<L>());
  const auto s4family = recursive_family(real_projection(s4), 2);
  const auto base_fit = truncation_matrix_fit(real_projection(s4), taus);
  CHECK(base_fit[0][1].fit.exponent - 1 >= 4 - 0.25);
  for (const auto& level : s4family.levels) {
    const auto fit = truncation_matrix_fit(level, taus);
    double local = 1e9;
    for (const auto& row : fit)
      for (const auto& entry : row)
        if (!entry.zero_at_this_order) local = std::min(local, entry.fit.exponent);
    CHECK(local - 1 >= level.meta().order - 0.25);
  }
}

TEST_CASE("linear trend") {
  const std::vector<double> t{0, 1, 2, 3};
  const std::vector<double> v{1, 3, 5, 7};
  CHECK(linear_trend(t, v) == doctest::Approx(2));
  CHECK_THROWS_AS(linear_trend(std::vector<double>{1}, std::vector<double>{1}), ValidationError);
}
