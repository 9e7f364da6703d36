#pragma once

// Planar Kepler problem H = |p|^2/2 - mu/r with the force continued
// analytically to complex positions.

#include <array>
#include <complex>
#include <concepts>
#include <span>

#include "pseudosym/flow_map.hpp"

namespace pseudosym {

/// Principal logarithm log|z| + 2i atan(y / (x + |z|)).
/// Throws SingularityError on the closed negative real axis (including 0).
template <std::floating_point Real>
std::complex<Real> principal_log(std::complex<Real> z);

/// exp(-3/2 principal_log(z)), the continuation of z^(-3/2) = 1/r^3 for z = q1^2 + q2^2.
template <std::floating_point Real>
std::complex<Real> analytic_inv_r3(std::complex<Real> z);

template <std::floating_point Real>
struct KeplerState {
  std::array<std::complex<Real>, 2> q{};
  std::array<std::complex<Real>, 2> p{};
  Real mu = 1;

  /// Flat layout (q1, q2, p1, p2) used by FlowMap.
  StateVector<Real> to_vector() const { return {q[0], q[1], p[0], p[1]}; }
  static KeplerState from_vector(std::span<const std::complex<Real>> x, Real mu) {
    return {{x[0], x[1]}, {x[2], x[3]}, mu};
  }
};

/// q <- q + tau p.
template <std::floating_point Real>
KeplerState<Real> kepler_drift(const KeplerState<Real>& state, std::complex<Real> tau);

/// p <- p - tau mu q analytic_inv_r3(q1^2 + q2^2).
template <std::floating_point Real>
KeplerState<Real> kepler_kick(const KeplerState<Real>& state, std::complex<Real> tau);

/// q = (1-e, 0), p = (0, sqrt((1+e)/(1-e))), mu = 1; period 2 pi.
/// Throws DomainError unless 0 <= e < 1.
template <std::floating_point Real>
KeplerState<Real> kepler_initial_conditions(Real eccentricity);

/// Hamiltonian of a real state. Throws SingularityError at r = 0.
template <std::floating_point Real>
Real kepler_energy(const KeplerState<Real>& state);

/// Same, on the flat real layout (q1, q2, p1, p2).
template <std::floating_point Real>
Real kepler_energy(std::span<const Real> x, Real mu = 1);

template <std::floating_point Real>
FlowMap<Real> kepler_drift_flow(Real mu = 1);

template <std::floating_point Real>
FlowMap<Real> kepler_kick_flow(Real mu = 1);

}  // namespace pseudosym
