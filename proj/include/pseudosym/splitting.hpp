#pragma once

// Splitting schemes built from the exact flows of f = f_a + f_b.

#include <array>
#include <complex>
#include <concepts>

#include "pseudosym/flow_map.hpp"

namespace pseudosym {

/// phi^a_{tau/2} o phi^b_tau o phi^a_{tau/2}; symmetric, order 2.
template <std::floating_point Real>
FlowMap<Real> strang(const FlowMap<Real>& flow_a, const FlowMap<Real>& flow_b);

template <std::floating_point Real>
struct S4simCoefficients {
  std::array<std::complex<Real>, 4> a;  // a1, a2, a2, a1
  std::array<std::complex<Real>, 5> b;  // b1, b2, b3, b2, b1
};

/// a_i = 1/4, b1 = 1/10 - i/30, b2 = 4/15 + 2i/15, b3 = 4/15 - i/5.
template <std::floating_point Real>
S4simCoefficients<Real> s4sim_coefficients();

/// phi^b_{b1} o phi^a_{a1} o phi^b_{b2} o phi^a_{a2} o phi^b_{b3} o phi^a_{a2} o phi^b_{b2}
/// o phi^a_{a1} o phi^b_{b1}; symmetric, order 4, complex b-stages.
template <std::floating_point Real>
FlowMap<Real> s4sim(const FlowMap<Real>& flow_a, const FlowMap<Real>& flow_b);

}  // namespace pseudosym
