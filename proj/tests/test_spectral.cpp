#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

#include "pseudosym/errors.hpp"
#include "pseudosym/spectral.hpp"

using namespace pseudosym;
using C = std::complex<double>;

namespace {

std::vector<C> naive_dft(const std::vector<C>& x) {
  const std::size_t n = x.size();
  std::vector<C> out(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j)
      out[m] += x[j] * std::polar(1.0, -2 * std::numbers::pi * double(j * m % n) / double(n));
  return out;
}

SpectralField<double> random_field(GridPtr<double> g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  SpectralField<double> f(g);
  for (auto& v : f.values) v = C(d(rng), d(rng));
  return f;
}

}  // namespace

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(SpectralGrid<double>(0, 1, 100), ValidationError);
  CHECK_THROWS_AS(SpectralGrid<double>(0, 1, 1), ValidationError);
  CHECK_THROWS_AS(SpectralGrid<double>(0, 0, 8), ValidationError);
  CHECK_NOTHROW(SpectralGrid<double>(0, 1, 2));
}

TEST_CASE("nodes and wavenumbers") {
  const SpectralGrid<double> g(-1, 4, 8);
  CHECK(g.node(0) == -1.0);
  CHECK(g.node(3) == doctest::Approx(0.5));
  const double base = 2 * std::numbers::pi / 4;
  const std::vector<int> m{0, 1, 2, 3, -4, -3, -2, -1};
  for (std::size_t i = 0; i < 8; ++i) CHECK(g.wavenumbers()[i] == doctest::Approx(base * m[i]));
}

TEST_CASE("forward transform matches a naive DFT") {
  for (std::size_t n : {2u, 8u, 64u}) {
    auto g = make_grid<double>(0, 1, n);
    const auto f = random_field(g, unsigned(n));
    const auto fast = dft(f);
    const auto slow = naive_dft(f.values);
    for (std::size_t m = 0; m < n; ++m) CHECK(std::abs(fast[m] - slow[m]) < 1e-12 * double(n));
  }
}

TEST_CASE("inverse transform round trip") {
  auto g = make_grid<double>(0, 1, 32);
  const auto f = random_field(g, 3);
  const auto coeffs = dft(f);
  const auto back = idft<double>(coeffs, g);
  CHECK(sup_norm_distance(back, f) < 1e-14);
  CHECK_THROWS_AS(idft<double>(std::vector<C>(5), g), ValidationError);
}

TEST_CASE("extended precision transform") {
  auto g = make_grid<long double>(0, 1, 16);
  SpectralField<long double> f(g);
  for (std::size_t j = 0; j < 16; ++j) f.values[j] = std::sin(2 * std::numbers::pi_v<long double> * g->node(j));
  const auto back = idft<long double>(dft(f), g);
  CHECK(double(sup_norm_distance(back, f)) < 1e-17);
}

TEST_CASE("diffusion propagator") {
  auto g = make_grid<double>(0, 2 * std::numbers::pi, 32);
  SUBCASE("eigenmode") {
    const auto f = SpectralField<double>::sample(g, [](double x) { return std::exp(C(0, 3 * x)); });
    const auto out = diffusion_propagator(f, C(1, 0.5), 0.2, C(0.1, 0.02));
    const C factor = std::exp(0.2 * C(0.1, 0.02)) * std::exp(-C(0.1, 0.02) * C(1, 0.5) * 9.0);
    for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(out.values[j] - factor * f.values[j]) < 1e-14);
  }
  SUBCASE("identity at zero step") {
    const auto f = random_field(g, 8);
    CHECK(sup_norm_distance(diffusion_propagator(f, C(1, 1), 1.0, C(0)), f) < 1e-14);
  }
  SUBCASE("real data stays real for a real generator") {
    auto f = random_field(g, 9);
    for (auto& v : f.values) v = v.real();
    const auto out = diffusion_propagator(f, C(1), 0.0, C(0.05));
    for (const auto& v : out.values) CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("sup norm distance") {
  auto g = make_grid<double>(0, 1, 4);
  SpectralField<double> a(g, {1, 2, 3, 4});
  SpectralField<double> b(g, {1, 2, C(3, 2), 4});
  CHECK(sup_norm_distance(a, b) == 2.0);
  SpectralField<double> other(make_grid<double>(0, 2, 4));
  CHECK_THROWS_AS(sup_norm_distance(a, other), ValidationError);
  CHECK_THROWS_AS(SpectralField<double>(g, {1, 2}), ValidationError);
}

TEST_CASE("snapshot format") {
  auto g = make_grid<double>(0, 1, 2);
  SpectralField<double> f(g, {C(1, -1), C(0.5, 0)});
  std::ostringstream os;
  write_snapshot(os, f);
  CHECK(os.str() ==
        "0.0000000000000000e+00 1.0000000000000000e+00 -1.0000000000000000e+00\n"
        "5.0000000000000000e-01 5.0000000000000000e-01 0.0000000000000000e+00\n");
}

TEST_CASE("transforms on a shared grid are safe from several threads") {
  auto g = make_grid<double>(0, 1, 256);
  const auto f = random_field(g, 12);
  const auto reference = dft(f);
  std::vector<std::vector<C>> results(8);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < results.size(); ++t)
    pool.emplace_back([&, t] {
      for (int rep = 0; rep < 50; ++rep) results[t] = dft(f);
    });
  for (auto& th : pool) th.join();
  for (const auto& r : results) CHECK(r == reference);
}
