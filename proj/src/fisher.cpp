#include "pseudosym/fisher.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "pseudosym/errors.hpp"

namespace pseudosym {

namespace {

// e^z - 1 without cancellation for small |z|.
template <class Real>
std::complex<Real> complex_expm1(std::complex<Real> z) {
  const Real x = z.real(), y = z.imag();
  const Real s = std::sin(y / 2);
  return {std::expm1(x) * std::cos(y) - Real(2) * s * s, std::exp(x) * std::sin(y)};
}

}  // namespace

template <std::floating_point Real>
std::vector<std::complex<Real>> fisher_reaction_flow(std::span<const std::complex<Real>> u,
                                                     std::complex<Real> tau) {
  const std::complex<Real> growth = std::exp(tau);
  const std::complex<Real> em1 = complex_expm1(tau);
  std::vector<std::complex<Real>> out(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const std::complex<Real> den = Real(1) + u[j] * em1;
    if (std::abs(den) < Real(1e-12)) {
      std::ostringstream msg;
      msg << "fisher_reaction_flow: denominator 1 + u0 (e^tau - 1) vanishes at grid index " << j;
      throw SingularityError(msg.str(), j,
                             {static_cast<double>(den.real()), static_cast<double>(den.imag())});
    }
    out[j] = u[j] * growth / den;
  }
  return out;
}

template <std::floating_point Real>
SpectralField<Real> fisher_reaction_flow(const SpectralField<Real>& field, std::complex<Real> tau) {
  return SpectralField<Real>(
      field.grid, fisher_reaction_flow(std::span<const std::complex<Real>>(field.values), tau));
}

template <std::floating_point Real>
FlowMap<Real> fisher_diffusion_flow(GridPtr<Real> grid) {
  return FlowMap<Real>(
      [grid](const StateVector<Real>& u, std::complex<Real> tau) {
        return diffusion_propagator(*grid, std::span<const std::complex<Real>>(u),
                                    std::complex<Real>(1), Real(0), tau);
      },
      MethodMeta::symmetric(kUnbounded), "laplacian");
}

template <std::floating_point Real>
FlowMap<Real> fisher_reaction_flow_map() {
  return FlowMap<Real>(
      [](const StateVector<Real>& u, std::complex<Real> tau) {
        return fisher_reaction_flow(std::span<const std::complex<Real>>(u), tau);
      },
      MethodMeta::symmetric(kUnbounded), "logistic");
}

template <std::floating_point Real>
SpectralField<Real> fisher_initial_condition(GridPtr<Real> grid) {
  return SpectralField<Real>::sample(grid, [](Real x) {
    return std::complex<Real>(std::sin(Real(2) * std::numbers::pi_v<Real> * x));
  });
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                        \
  template std::vector<std::complex<Real>> fisher_reaction_flow<Real>(                    \
      std::span<const std::complex<Real>>, std::complex<Real>);                           \
  template SpectralField<Real> fisher_reaction_flow<Real>(const SpectralField<Real>&,     \
                                                          std::complex<Real>);            \
  template FlowMap<Real> fisher_diffusion_flow<Real>(GridPtr<Real>);                      \
  template FlowMap<Real> fisher_reaction_flow_map<Real>();                                \
  template SpectralField<Real> fisher_initial_condition<Real>(GridPtr<Real>);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
