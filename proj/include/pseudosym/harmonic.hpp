#pragma once

// Harmonic oscillator H = (p^2 + q^2)/2 as 2x2 matrices acting on (q, p).

#include <algorithm>
#include <array>
#include <complex>
#include <concepts>
#include <span>
#include <string>

#include "pseudosym/flow_map.hpp"

namespace pseudosym {

template <std::floating_point Real>
struct HOMatrix {
  using Scalar = std::complex<Real>;
  std::array<std::array<Scalar, 2>, 2> m{};

  static HOMatrix identity() { return {{{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}}}; }

  Scalar& operator()(int i, int j) { return m[i][j]; }
  const Scalar& operator()(int i, int j) const { return m[i][j]; }

  Scalar determinant() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

  friend HOMatrix operator*(const HOMatrix& a, const HOMatrix& b) {
    HOMatrix c;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
    return c;
  }
  friend HOMatrix operator-(const HOMatrix& a, const HOMatrix& b) {
    HOMatrix c;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) c.m[i][j] = a.m[i][j] - b.m[i][j];
    return c;
  }

  // Largest entry modulus.
  Real max_abs() const {
    Real r = 0;
    for (const auto& row : m)
      for (const auto& v : row) r = std::max(r, std::abs(v));
    return r;
  }
};

/// Exact flow M_H(tau) = (cos, sin; -sin, cos), analytic in tau.
template <std::floating_point Real>
HOMatrix<Real> ho_exact(std::complex<Real> tau);

/// Kinetic flow M_T(tau) = (1, tau; 0, 1).
template <std::floating_point Real>
HOMatrix<Real> ho_drift(std::complex<Real> tau);

/// Potential flow M_V(tau) = (1, 0; -tau, 1).
template <std::floating_point Real>
HOMatrix<Real> ho_kick(std::complex<Real> tau);

/// Leapfrog M_T(tau/2) M_V(tau) M_T(tau/2).
template <std::floating_point Real>
HOMatrix<Real> ho_strang(std::complex<Real> tau);

/// Wraps a matrix-valued function of the step as a FlowMap on (q, p).
template <std::floating_point Real>
FlowMap<Real> ho_matrix_flow(HOMatrix<Real> (*matrix)(std::complex<Real>), MethodMeta meta,
                             std::string name);

template <std::floating_point Real>
FlowMap<Real> ho_exact_flow() {
  return ho_matrix_flow<Real>(&ho_exact<Real>, MethodMeta::symmetric(kUnbounded), "ho_exact");
}
template <std::floating_point Real>
FlowMap<Real> ho_drift_flow() {
  return ho_matrix_flow<Real>(&ho_drift<Real>, MethodMeta::symmetric(kUnbounded), "ho_drift");
}
template <std::floating_point Real>
FlowMap<Real> ho_kick_flow() {
  return ho_matrix_flow<Real>(&ho_kick<Real>, MethodMeta::symmetric(kUnbounded), "ho_kick");
}
template <std::floating_point Real>
FlowMap<Real> ho_strang_flow() {
  return ho_matrix_flow<Real>(&ho_strang<Real>, MethodMeta::symmetric(2), "strang");
}

/// Matrix of a linear FlowMap on (q, p) at the given step, read off from its
/// action on the unit vectors.
template <std::floating_point Real>
HOMatrix<Real> matrix_of(const FlowMap<Real>& flow, std::complex<Real> tau);

template <std::floating_point Real>
Real ho_energy(std::span<const Real> x) {
  return Real(0.5) * (x[0] * x[0] + x[1] * x[1]);
}

}  // namespace pseudosym
