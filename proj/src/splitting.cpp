#include "pseudosym/splitting.hpp"

#include <algorithm>
#include <cmath>

namespace pseudosym {

template <std::floating_point Real>
FlowMap<Real> strang(const FlowMap<Real>& flow_a, const FlowMap<Real>& flow_b) {
  return FlowMap<Real>(
      [flow_a, flow_b](const StateVector<Real>& x, std::complex<Real> tau) {
        const std::complex<Real> half = tau * Real(0.5);
        return flow_a(flow_b(flow_a(x, half), tau), half);
      },
      MethodMeta::symmetric(2), "strang(" + flow_a.name() + "," + flow_b.name() + ")",
      std::max(flow_a.stage_argument(), flow_b.stage_argument()));
}

template <std::floating_point Real>
S4simCoefficients<Real> s4sim_coefficients() {
  using C = std::complex<Real>;
  const C a(Real(1) / 4);
  const C b1(Real(1) / 10, Real(-1) / 30);
  const C b2(Real(4) / 15, Real(2) / 15);
  const C b3(Real(4) / 15, Real(-1) / 5);
  return {{a, a, a, a}, {b1, b2, b3, b2, b1}};
}

template <std::floating_point Real>
FlowMap<Real> s4sim(const FlowMap<Real>& flow_a, const FlowMap<Real>& flow_b) {
  const auto c = s4sim_coefficients<Real>();
  Real max_arg = 0;
  for (const auto& b : c.b) max_arg = std::max(max_arg, std::abs(std::arg(b)));
  return FlowMap<Real>(
      [flow_a, flow_b, c](const StateVector<Real>& x, std::complex<Real> tau) {
        StateVector<Real> y = flow_b(x, c.b[0] * tau);
        for (std::size_t s = 0; s < c.a.size(); ++s) {
          y = flow_a(y, c.a[s] * tau);
          y = flow_b(y, c.b[s + 1] * tau);
        }
        return y;
      },
      MethodMeta::symmetric(4), "s4sim(" + flow_a.name() + "," + flow_b.name() + ")", max_arg);
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                       \
  template FlowMap<Real> strang<Real>(const FlowMap<Real>&, const FlowMap<Real>&);       \
  template S4simCoefficients<Real> s4sim_coefficients<Real>();                           \
  template FlowMap<Real> s4sim<Real>(const FlowMap<Real>&, const FlowMap<Real>&);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
