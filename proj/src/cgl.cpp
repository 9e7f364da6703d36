#include "pseudosym/cgl.hpp"

#include <cmath>
#include <sstream>

#include "pseudosym/errors.hpp"
#include "pseudosym/kepler.hpp"

namespace pseudosym {

namespace {

template <class Real>
void check_same_grid(const CGLState<Real>& s) {
  if (!s.v.grid->same_as(*s.w.grid)) throw ValidationError("CGL state: v and w grids differ");
}

// log(1 + 2 tau M0) at grid point j, with the branch cut reported by index.
template <class Real>
std::complex<Real> nonlinear_log(std::complex<Real> m0, std::complex<Real> tau, std::size_t j) {
  const std::complex<Real> z = Real(1) + Real(2) * tau * m0;
  if (z.imag() == Real(0) && !(z.real() > Real(0))) {
    std::ostringstream msg;
    msg << "cgl_nonlinear_flow: 1 + 2 tau M0 = " << static_cast<double>(z.real())
        << " on the branch cut at grid index " << j;
    throw SingularityError(msg.str(), j, {static_cast<double>(z.real()), 0.0});
  }
  return principal_log(z);
}

}  // namespace

template <std::floating_point Real>
StateVector<Real> CGLState<Real>::to_vector() const {
  StateVector<Real> x(v.values);
  x.insert(x.end(), w.values.begin(), w.values.end());
  return x;
}

template <std::floating_point Real>
CGLState<Real> CGLState<Real>::from_vector(GridPtr<Real> grid, std::span<const std::complex<Real>> x) {
  const std::size_t n = grid->size();
  if (x.size() != 2 * n) throw ValidationError("CGL state: expected 2N values");
  return {SpectralField<Real>(grid, {x.begin(), x.begin() + n}),
          SpectralField<Real>(grid, {x.begin() + n, x.end()})};
}

template <std::floating_point Real>
SpectralField<Real> CGLState<Real>::u() const {
  SpectralField<Real> out(v.grid);
  const std::complex<Real> i(0, 1);
  for (std::size_t j = 0; j < out.values.size(); ++j) out.values[j] = v.values[j] + i * w.values[j];
  return out;
}

template <std::floating_point Real>
CGLState<Real> cgl_nonlinear_flow(const CGLState<Real>& state, const CGLParams<Real>& params,
                                  std::complex<Real> tau) {
  check_same_grid(state);
  const std::complex<Real> i(0, 1);
  const std::complex<Real> half_beta = params.beta() * Real(0.5);
  CGLState<Real> out = state;
  for (std::size_t j = 0; j < state.v.values.size(); ++j) {
    const auto v = state.v.values[j], w = state.w.values[j];
    const std::complex<Real> vt = Real(0.5) * (-i * v + w);
    const std::complex<Real> wt = Real(0.5) * (v - i * w);
    const std::complex<Real> m0 = Real(4) * i * vt * wt;
    const std::complex<Real> log_term = nonlinear_log(m0, tau, j);
    const std::complex<Real> vt1 = vt * std::exp(-half_beta * log_term);
    const std::complex<Real> wt1 = wt * std::exp(-std::conj(half_beta) * log_term);
    out.v.values[j] = i * vt1 + wt1;
    out.w.values[j] = vt1 + i * wt1;
  }
  return out;
}

template <std::floating_point Real>
CGLState<Real> cgl_nonlinear_flow_vw(const CGLState<Real>& state, const CGLParams<Real>& params,
                                     std::complex<Real> tau) {
  check_same_grid(state);
  const std::complex<Real> two_i(0, 2);
  const std::complex<Real> half_beta = params.beta() * Real(0.5);
  CGLState<Real> out = state;
  for (std::size_t j = 0; j < state.v.values.size(); ++j) {
    const auto v = state.v.values[j], w = state.w.values[j];
    const std::complex<Real> log_term = nonlinear_log(v * v + w * w, tau, j);
    const std::complex<Real> a = std::exp(-half_beta * log_term);
    const std::complex<Real> b = std::exp(-std::conj(half_beta) * log_term);
    const std::complex<Real> even = (a + b) * Real(0.5);
    const std::complex<Real> odd = (a - b) / two_i;
    out.v.values[j] = v * even - w * odd;
    out.w.values[j] = v * odd + w * even;
  }
  return out;
}

template <std::floating_point Real>
CGLState<Real> cgl_linear_flow(const CGLState<Real>& state, const CGLParams<Real>& params,
                               std::complex<Real> tau) {
  check_same_grid(state);
  const std::complex<Real> i(0, 1);
  const auto& grid = *state.v.grid;
  const std::size_t n = grid.size();
  std::vector<std::complex<Real>> vt(n), wt(n);
  for (std::size_t j = 0; j < n; ++j) {
    vt[j] = Real(0.5) * (-i * state.v.values[j] + state.w.values[j]);
    wt[j] = Real(0.5) * (state.v.values[j] - i * state.w.values[j]);
  }
  vt = diffusion_propagator(grid, std::span<const std::complex<Real>>(vt), params.alpha(),
                            params.eps(), tau);
  wt = diffusion_propagator(grid, std::span<const std::complex<Real>>(wt), std::conj(params.alpha()),
                            params.eps(), tau);
  CGLState<Real> out = state;
  for (std::size_t j = 0; j < n; ++j) {
    out.v.values[j] = i * vt[j] + wt[j];
    out.w.values[j] = vt[j] + i * wt[j];
  }
  return out;
}

template <std::floating_point Real>
FlowMap<Real> cgl_linear_flow_map(GridPtr<Real> grid, const CGLParams<Real>& params) {
  return FlowMap<Real>(
      [grid, params](const StateVector<Real>& x, std::complex<Real> tau) {
        return cgl_linear_flow(CGLState<Real>::from_vector(grid, x), params, tau).to_vector();
      },
      MethodMeta::symmetric(kUnbounded), "cgl_linear");
}

template <std::floating_point Real>
FlowMap<Real> cgl_nonlinear_flow_map(GridPtr<Real> grid, const CGLParams<Real>& params) {
  return FlowMap<Real>(
      [grid, params](const StateVector<Real>& x, std::complex<Real> tau) {
        return cgl_nonlinear_flow(CGLState<Real>::from_vector(grid, x), params, tau).to_vector();
      },
      MethodMeta::symmetric(kUnbounded), "cgl_nonlinear");
}

template <std::floating_point Real>
GridPtr<Real> make_cgl_grid(std::size_t n_points) {
  return make_grid<Real>(Real(-100), Real(200), n_points);
}

template <std::floating_point Real>
CGLState<Real> cgl_initial_condition(GridPtr<Real> grid) {
  auto v = SpectralField<Real>::sample(grid, [](Real x) {
    const Real a = std::cosh(x - Real(10)), b = std::cosh(x + Real(10));
    return std::complex<Real>(Real(0.8) / (a * a) + Real(0.8) / (b * b));
  });
  return {v, SpectralField<Real>(grid)};
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                           \
  template struct CGLState<Real>;                                                            \
  template CGLState<Real> cgl_nonlinear_flow<Real>(const CGLState<Real>&,                    \
                                                   const CGLParams<Real>&, std::complex<Real>); \
  template CGLState<Real> cgl_nonlinear_flow_vw<Real>(                                       \
      const CGLState<Real>&, const CGLParams<Real>&, std::complex<Real>);                    \
  template CGLState<Real> cgl_linear_flow<Real>(const CGLState<Real>&, const CGLParams<Real>&, \
                                                std::complex<Real>);                         \
  template FlowMap<Real> cgl_linear_flow_map<Real>(GridPtr<Real>, const CGLParams<Real>&);   \
  template FlowMap<Real> cgl_nonlinear_flow_map<Real>(GridPtr<Real>, const CGLParams<Real>&); \
  template GridPtr<Real> make_cgl_grid<Real>(std::size_t);                                   \
  template CGLState<Real> cgl_initial_condition<Real>(GridPtr<Real>);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
