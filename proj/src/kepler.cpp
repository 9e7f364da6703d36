#include "pseudosym/kepler.hpp"

#include <cmath>
#include <sstream>

#include "pseudosym/errors.hpp"

namespace pseudosym {

template <std::floating_point Real>
std::complex<Real> principal_log(std::complex<Real> z) {
  const Real x = z.real(), y = z.imag();
  if (y == Real(0) && !(x > Real(0))) {
    std::ostringstream msg;
    msg << "principal_log: argument " << static_cast<double>(x)
        << " lies on the branch cut (closed negative real axis)";
    throw SingularityError(msg.str(), SingularityError::npos,
                           std::complex<double>(static_cast<double>(x), 0.0));
  }
  const Real modulus = std::abs(z);
  return {std::log(modulus), std::atan2(y, x)};
}

template <std::floating_point Real>
std::complex<Real> analytic_inv_r3(std::complex<Real> z) {
  return std::exp(Real(-1.5) * principal_log(z));
}

template <std::floating_point Real>
KeplerState<Real> kepler_drift(const KeplerState<Real>& s, std::complex<Real> tau) {
  KeplerState<Real> out = s;
  out.q[0] += tau * s.p[0];
  out.q[1] += tau * s.p[1];
  return out;
}

template <std::floating_point Real>
KeplerState<Real> kepler_kick(const KeplerState<Real>& s, std::complex<Real> tau) {
  KeplerState<Real> out = s;
  const auto factor = tau * s.mu * analytic_inv_r3(s.q[0] * s.q[0] + s.q[1] * s.q[1]);
  out.p[0] -= factor * s.q[0];
  out.p[1] -= factor * s.q[1];
  return out;
}

template <std::floating_point Real>
KeplerState<Real> kepler_initial_conditions(Real e) {
  if (!(e >= Real(0) && e < Real(1))) {
    std::ostringstream msg;
    msg << "kepler_initial_conditions: eccentricity must lie in [0, 1), got "
        << static_cast<double>(e);
    throw DomainError(msg.str());
  }
  using S = std::complex<Real>;
  return {{S(1 - e), S(0)}, {S(0), S(std::sqrt((1 + e) / (1 - e)))}, Real(1)};
}

template <std::floating_point Real>
Real kepler_energy(std::span<const Real> x, Real mu) {
  const Real r = std::hypot(x[0], x[1]);
  if (r == Real(0)) throw SingularityError("kepler_energy: collision (r = 0)");
  return Real(0.5) * (x[2] * x[2] + x[3] * x[3]) - mu / r;
}

template <std::floating_point Real>
Real kepler_energy(const KeplerState<Real>& s) {
  const Real x[] = {s.q[0].real(), s.q[1].real(), s.p[0].real(), s.p[1].real()};
  return kepler_energy<Real>(std::span<const Real>(x), s.mu);
}

template <std::floating_point Real>
FlowMap<Real> kepler_drift_flow(Real mu) {
  return FlowMap<Real>(
      [mu](const StateVector<Real>& x, std::complex<Real> tau) {
        return kepler_drift(KeplerState<Real>::from_vector(x, mu), tau).to_vector();
      },
      MethodMeta::symmetric(kUnbounded), "kepler_drift");
}

template <std::floating_point Real>
FlowMap<Real> kepler_kick_flow(Real mu) {
  return FlowMap<Real>(
      [mu](const StateVector<Real>& x, std::complex<Real> tau) {
        return kepler_kick(KeplerState<Real>::from_vector(x, mu), tau).to_vector();
      },
      MethodMeta::symmetric(kUnbounded), "kepler_kick");
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                           \
  template std::complex<Real> principal_log<Real>(std::complex<Real>);                       \
  template std::complex<Real> analytic_inv_r3<Real>(std::complex<Real>);                     \
  template KeplerState<Real> kepler_drift<Real>(const KeplerState<Real>&, std::complex<Real>); \
  template KeplerState<Real> kepler_kick<Real>(const KeplerState<Real>&, std::complex<Real>);  \
  template KeplerState<Real> kepler_initial_conditions<Real>(Real);                          \
  template Real kepler_energy<Real>(const KeplerState<Real>&);                               \
  template Real kepler_energy<Real>(std::span<const Real>, Real);                            \
  template FlowMap<Real> kepler_drift_flow<Real>(Real);                                      \
  template FlowMap<Real> kepler_kick_flow<Real>(Real);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
