#pragma once

// Fisher reaction-diffusion u_t = u_xx + u(1-u) on a periodic grid.

#include <complex>
#include <concepts>
#include <span>
#include <vector>

#include "pseudosym/flow_map.hpp"
#include "pseudosym/spectral.hpp"

namespace pseudosym {

/// Closed-form logistic flow u0 e^tau / (1 + u0 (e^tau - 1)), pointwise.
/// Throws SingularityError (with the grid index) when the denominator drops
/// below 1e-12 in modulus.
template <std::floating_point Real>
SpectralField<Real> fisher_reaction_flow(const SpectralField<Real>& field, std::complex<Real> tau);

template <std::floating_point Real>
std::vector<std::complex<Real>> fisher_reaction_flow(std::span<const std::complex<Real>> u,
                                                     std::complex<Real> tau);

/// Elementary flows of the Laplacian / reaction splitting, on raw grid samples.
template <std::floating_point Real>
FlowMap<Real> fisher_diffusion_flow(GridPtr<Real> grid);

template <std::floating_point Real>
FlowMap<Real> fisher_reaction_flow_map();

/// u0(x) = sin(2 pi x) on [0, 1).
template <std::floating_point Real>
SpectralField<Real> fisher_initial_condition(GridPtr<Real> grid);

}  // namespace pseudosym
