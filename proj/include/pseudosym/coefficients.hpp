#pragma once

// Complex composition coefficients for double- and triple-jump compositions.

#include <complex>
#include <concepts>
#include <span>
#include <utility>

namespace pseudosym {

/// Admissible branch range [lo, hi] of the double-jump coefficient for a
/// base of order k.
std::pair<int, int> double_jump_branch_range(int k);

/// gamma with gamma + conj(gamma) = 1 and gamma^(k+1) + conj(gamma)^(k+1) = 0,
/// branch `ell` (0 is the smallest phase). Throws DomainError outside the
/// admissible range.
template <std::floating_point Real>
std::complex<Real> gamma_double_jump(int k, int ell);

/// Branch ell = 0; its argument is pi / (2(k+1)).
template <std::floating_point Real>
std::complex<Real> gamma_smallest_phase(int k);

/// Smallest-phase complex solution (gamma1, gamma2) of the symmetric triple
/// jump gamma1, gamma2, gamma1 with 2 gamma1 + gamma2 = 1 and
/// 2 gamma1^(k+1) + gamma2^(k+1) = 0.
template <std::floating_point Real>
std::pair<std::complex<Real>, std::complex<Real>> gamma_triple_jump(int k);

template <std::floating_point Real>
struct OrderResiduals {
  std::complex<Real> sum_residual;    // sum gamma_i - 1
  std::complex<Real> power_residual;  // sum gamma_i^(k+1)
};

template <std::floating_point Real>
OrderResiduals<Real> order_condition_residuals(std::span<const std::complex<Real>> coefficients,
                                               int k);

}  // namespace pseudosym
