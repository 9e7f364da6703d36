#pragma once

// Complex Ginzburg-Landau u_t = alpha u_xx + eps u - beta |u|^2 u written as the
// real system for (v, w) = (Re u, Im u), continued to complex time.

#include <complex>
#include <concepts>

#include "pseudosym/flow_map.hpp"
#include "pseudosym/spectral.hpp"

namespace pseudosym {

template <std::floating_point Real>
class CGLParams {
 public:
  CGLParams(Real c1, Real c3, Real eps) : c1_(c1), c3_(c3), eps_(eps) {}

  Real c1() const { return c1_; }
  Real c3() const { return c3_; }
  Real eps() const { return eps_; }
  std::complex<Real> alpha() const { return {Real(1), c1_}; }
  std::complex<Real> beta() const { return {Real(1), -c3_}; }

 private:
  Real c1_, c3_, eps_;
};

/// (v, w) on a common grid; both complexified for complex-time stages.
template <std::floating_point Real>
struct CGLState {
  SpectralField<Real> v;
  SpectralField<Real> w;

  /// Flat layout (v_0..v_{N-1}, w_0..w_{N-1}) used by FlowMap.
  StateVector<Real> to_vector() const;
  static CGLState from_vector(GridPtr<Real> grid, std::span<const std::complex<Real>> x);
  /// u = v + i w.
  SpectralField<Real> u() const;
};

/// Exact flow of v_t, w_t = -(v^2 + w^2)(v + c3 w, -c3 v + w), evaluated in
/// the diagonal variables v~ = (-i v + w)/2, w~ = (v - i w)/2:
/// v~ <- v~ exp(-beta/2 L), w~ <- w~ exp(-conj(beta)/2 L), L = log(1 + 2 tau M0).
/// Throws SingularityError when 1 + 2 tau M0 reaches the closed negative real axis.
template <std::floating_point Real>
CGLState<Real> cgl_nonlinear_flow(const CGLState<Real>& state, const CGLParams<Real>& params,
                                  std::complex<Real> tau);

/// The same flow through the closed (v, w) form; used as a cross-check.
template <std::floating_point Real>
CGLState<Real> cgl_nonlinear_flow_vw(const CGLState<Real>& state, const CGLParams<Real>& params,
                                     std::complex<Real> tau);

/// Exact flow of v_t, w_t = (1, -c1; c1, 1) (v, w)_xx + eps (v, w): v~ and w~
/// are propagated with alpha and conj(alpha) respectively.
template <std::floating_point Real>
CGLState<Real> cgl_linear_flow(const CGLState<Real>& state, const CGLParams<Real>& params,
                               std::complex<Real> tau);

template <std::floating_point Real>
FlowMap<Real> cgl_linear_flow_map(GridPtr<Real> grid, const CGLParams<Real>& params);

template <std::floating_point Real>
FlowMap<Real> cgl_nonlinear_flow_map(GridPtr<Real> grid, const CGLParams<Real>& params);

/// Periodic grid on [-100, 100).
template <std::floating_point Real>
GridPtr<Real> make_cgl_grid(std::size_t n_points = 512);

/// u0(x) = 0.8 / cosh(x-10)^2 + 0.8 / cosh(x+10)^2, i.e. v0 = u0, w0 = 0.
template <std::floating_point Real>
CGLState<Real> cgl_initial_condition(GridPtr<Real> grid);

}  // namespace pseudosym
