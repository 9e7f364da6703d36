#include "pseudosym/harmonic.hpp"

#include <utility>

namespace pseudosym {

template <std::floating_point Real>
HOMatrix<Real> ho_exact(std::complex<Real> tau) {
  const auto c = std::cos(tau), s = std::sin(tau);
  return {{{{c, s}, {-s, c}}}};
}

template <std::floating_point Real>
HOMatrix<Real> ho_drift(std::complex<Real> tau) {
  using S = std::complex<Real>;
  return {{{{S(1), tau}, {S(0), S(1)}}}};
}

template <std::floating_point Real>
HOMatrix<Real> ho_kick(std::complex<Real> tau) {
  using S = std::complex<Real>;
  return {{{{S(1), S(0)}, {-tau, S(1)}}}};
}

template <std::floating_point Real>
HOMatrix<Real> ho_strang(std::complex<Real> tau) {
  const auto half = ho_drift<Real>(tau * Real(0.5));
  return half * ho_kick<Real>(tau) * half;
}

template <std::floating_point Real>
FlowMap<Real> ho_matrix_flow(HOMatrix<Real> (*matrix)(std::complex<Real>), MethodMeta meta,
                             std::string name) {
  auto evaluator = [matrix](const StateVector<Real>& x, std::complex<Real> tau) {
    const HOMatrix<Real> m = matrix(tau);
    return StateVector<Real>{m(0, 0) * x[0] + m(0, 1) * x[1], m(1, 0) * x[0] + m(1, 1) * x[1]};
  };
  return FlowMap<Real>(std::move(evaluator), meta, std::move(name));
}

template <std::floating_point Real>
HOMatrix<Real> matrix_of(const FlowMap<Real>& flow, std::complex<Real> tau) {
  using S = std::complex<Real>;
  const auto c0 = flow(StateVector<Real>{S(1), S(0)}, tau);
  const auto c1 = flow(StateVector<Real>{S(0), S(1)}, tau);
  return {{{{c0[0], c1[0]}, {c0[1], c1[1]}}}};
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                        \
  template HOMatrix<Real> ho_exact<Real>(std::complex<Real>);                             \
  template HOMatrix<Real> ho_drift<Real>(std::complex<Real>);                             \
  template HOMatrix<Real> ho_kick<Real>(std::complex<Real>);                              \
  template HOMatrix<Real> ho_strang<Real>(std::complex<Real>);                            \
  template FlowMap<Real> ho_matrix_flow<Real>(HOMatrix<Real> (*)(std::complex<Real>),      \
                                              MethodMeta, std::string);                   \
  template HOMatrix<Real> matrix_of<Real>(const FlowMap<Real>&, std::complex<Real>);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
