#include "pseudosym/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pseudosym/errors.hpp"

namespace pseudosym {

namespace {

template <class Real>
std::complex<Real> integer_power(std::complex<Real> z, int n) {
  std::complex<Real> result{1};
  for (; n > 0; n >>= 1, z *= z)
    if (n & 1) result *= z;
  return result;
}

}  // namespace

std::pair<int, int> double_jump_branch_range(int k) {
  if (k < 1) throw DomainError("double jump: order k must be >= 1, got " + std::to_string(k));
  if (k % 2 == 0) return {-k / 2, k / 2 - 1};
  return {-(k + 1) / 2, (k - 1) / 2};
}

template <std::floating_point Real>
std::complex<Real> gamma_double_jump(int k, int ell) {
  const auto [lo, hi] = double_jump_branch_range(k);
  if (ell < lo || ell > hi) {
    throw DomainError("double jump: branch ell=" + std::to_string(ell) + " outside [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "] for k=" +
                      std::to_string(k));
  }
  // sin(theta) / (1 + cos(theta)) == tan(theta / 2)
  const Real half_angle =
      Real(2 * ell + 1) * std::numbers::pi_v<Real> / (Real(2) * Real(k + 1));
  return {Real(0.5), Real(0.5) * std::tan(half_angle)};
}

template <std::floating_point Real>
std::complex<Real> gamma_smallest_phase(int k) {
  if (k < 1) throw DomainError("gamma_smallest_phase: k must be >= 1, got " + std::to_string(k));
  return gamma_double_jump<Real>(k, 0);
}

template <std::floating_point Real>
std::pair<std::complex<Real>, std::complex<Real>> gamma_triple_jump(int k) {
  if (k < 1) throw DomainError("gamma_triple_jump: k must be >= 1, got " + std::to_string(k));
  const Real inv = Real(1) / Real(k + 1);
  const std::complex<Real> rot = std::polar(Real(1), std::numbers::pi_v<Real> * inv);
  const std::complex<Real> g1 = rot / (std::pow(Real(2), inv) + Real(2) * rot);
  return {g1, Real(1) - Real(2) * g1};
}

template <std::floating_point Real>
OrderResiduals<Real> order_condition_residuals(std::span<const std::complex<Real>> coefficients,
                                               int k) {
  if (coefficients.empty()) throw ValidationError("order_condition_residuals: empty list");
  std::complex<Real> sum{}, powers{};
  for (const auto& g : coefficients) {
    sum += g;
    powers += integer_power(g, k + 1);
  }
  return {sum - Real(1), powers};
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                          \
  template std::complex<Real> gamma_double_jump<Real>(int, int);                            \
  template std::complex<Real> gamma_smallest_phase<Real>(int);                              \
  template std::pair<std::complex<Real>, std::complex<Real>> gamma_triple_jump<Real>(int);  \
  template OrderResiduals<Real> order_condition_residuals<Real>(                            \
      std::span<const std::complex<Real>>, int);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
