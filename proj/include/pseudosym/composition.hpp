#pragma once

// Composition combinators, real-axis projection and the recursive family of
// projected double-jump methods.

#include <complex>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "pseudosym/flow_map.hpp"
#include "pseudosym/method_meta.hpp"

namespace pseudosym {

/// Ordered coefficients applied to a base map, phi_tau = psi_{g1 tau} o ... o psi_{gs tau}.
template <std::floating_point Real>
struct CompositionSchedule {
  std::vector<std::complex<Real>> coefficients;
  FlowMap<Real> base;
  MethodMeta meta;
};

/// Checks that the schedule is non-empty, finite and consistent (sum == 1
/// within `tolerance`). Throws ValidationError with the residual otherwise.
template <std::floating_point Real>
void validate_schedule(std::span<const std::complex<Real>> coefficients, double tolerance = 1e-12);

/// Applies base with steps g_s tau, ..., g_1 tau (rightmost factor first).
template <std::floating_point Real>
FlowMap<Real> compose_schedule(const FlowMap<Real>& base,
                               std::span<const std::complex<Real>> coefficients,
                               const MethodMeta& meta);

template <std::floating_point Real>
FlowMap<Real> compose_schedule(const CompositionSchedule<Real>& schedule) {
  return compose_schedule(schedule.base, std::span<const std::complex<Real>>(schedule.coefficients),
                          schedule.meta);
}

/// psi_{gamma tau} o psi_{conj(gamma) tau} with gamma = gamma_smallest_phase(2n),
/// for a base of even order 2n. Declared order 2n+1.
template <std::floating_point Real>
FlowMap<Real> double_jump(const FlowMap<Real>& base);

/// Orders of 1/2 (psi + conj psi) for psi the double jump of a base with
/// the given meta (even order 2n, pseudo-symmetry q >= 2n+1).
MethodMeta projected_double_jump_meta(const MethodMeta& base);

/// R_tau = 1/2 (psi_tau + conj(psi)_tau) for a method applied to a real vector field.
///
/// For a real step the state must be real (relative imaginary part <= 1e-14,
/// DomainError otherwise) and the result is Re(psi_tau(x)), with an imaginary
/// part that is exactly zero. For a complex step (inside a recursion) the
/// conjugate method is evaluated explicitly as conj(psi_{conj tau}(conj x))
/// and averaged, which is the analytic continuation of the same map.
template <std::floating_point Real>
FlowMap<Real> real_projection(const FlowMap<Real>& method);

template <std::floating_point Real>
FlowMap<Real> real_projection(const FlowMap<Real>& method, const MethodMeta& meta);

template <std::floating_point Real>
struct RecursiveFamily {
  FlowMap<Real> base;
  std::vector<FlowMap<Real>> levels;  // levels[i-1] is R^(i)
  int base_order = 2;
  // coefficient_products[i-1] lists the 2^i complex factors multiplying tau
  // in the calls to the base method made by level i.
  std::vector<std::vector<std::complex<Real>>> coefficient_products;
  std::vector<std::string> warnings;

  std::vector<int> declared_orders() const {
    std::vector<int> orders;
    for (const auto& level : levels) orders.push_back(level.meta().order);
    return orders;
  }
};

/// Level 1 is real_projection(double_jump(base)); level i composes level i-1
/// at gamma tau and conj(gamma) tau with gamma = gamma_smallest_phase(2n + 2(i-1))
/// and projects. Requires an even base order 2n with pseudo-symmetry order
/// >= 2n+2. Levels past the pseudo-symmetry cap are built with a capped order
/// and a warning.
template <std::floating_point Real>
RecursiveFamily<Real> recursive_family(const FlowMap<Real>& base, int levels);

template <std::floating_point Real>
struct CoefficientArguments {
  Real max_argument;       // radians
  bool all_positive_real;  // max_argument < pi/2
};

/// Largest |arg| of all complex sub-steps taken by the deepest level,
/// including the base method's own complex fractions.
template <std::floating_point Real>
CoefficientArguments<Real> coefficient_arguments(const RecursiveFamily<Real>& family);

}  // namespace pseudosym
