#pragma once

// Uniform periodic 1D grid, DFT pair and diagonal Fourier propagators.

#include <complex>
#include <concepts>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace pseudosym {

namespace detail {
template <std::floating_point Real>
class FftPlans;
}

/// N equispaced nodes x_j = start + j L / N on a periodic interval of length L.
/// N must be a power of two >= 2 (ValidationError otherwise).
template <std::floating_point Real>
class SpectralGrid {
 public:
  SpectralGrid(Real domain_start, Real domain_length, std::size_t n_points);

  Real domain_start() const { return start_; }
  Real domain_length() const { return length_; }
  std::size_t size() const { return n_; }
  Real spacing() const { return length_ / Real(n_); }
  Real node(std::size_t j) const { return start_ + Real(j) * spacing(); }
  std::vector<Real> nodes() const;

  /// Angular wavenumbers 2 pi m / L in DFT order m = 0..N/2-1, -N/2..-1.
  const std::vector<Real>& wavenumbers() const { return wavenumbers_; }

  /// Forward transform, unnormalized.
  void forward(std::span<const std::complex<Real>> in, std::span<std::complex<Real>> out) const;
  /// Inverse transform, scaled by 1/N.
  void backward(std::span<const std::complex<Real>> in, std::span<std::complex<Real>> out) const;

  bool same_as(const SpectralGrid& other) const {
    return start_ == other.start_ && length_ == other.length_ && n_ == other.n_;
  }

 private:
  Real start_;
  Real length_;
  std::size_t n_;
  std::vector<Real> wavenumbers_;
  std::shared_ptr<const detail::FftPlans<Real>> plans_;
};

template <std::floating_point Real>
using GridPtr = std::shared_ptr<const SpectralGrid<Real>>;

template <std::floating_point Real>
GridPtr<Real> make_grid(Real domain_start, Real domain_length, std::size_t n_points) {
  return std::make_shared<const SpectralGrid<Real>>(domain_start, domain_length, n_points);
}

/// Physical-space samples of a complex function on a grid.
template <std::floating_point Real>
struct SpectralField {
  GridPtr<Real> grid;
  std::vector<std::complex<Real>> values;

  SpectralField(GridPtr<Real> g, std::vector<std::complex<Real>> v);
  explicit SpectralField(GridPtr<Real> g) : SpectralField(g, std::vector<std::complex<Real>>(g->size())) {}

  template <class F>
  static SpectralField sample(GridPtr<Real> g, F&& f) {
    std::vector<std::complex<Real>> v(g->size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(g->node(j));
    return SpectralField(std::move(g), std::move(v));
  }
};

template <std::floating_point Real>
std::vector<std::complex<Real>> dft(const SpectralField<Real>& field);

/// Throws ValidationError when the coefficient count does not match the grid.
template <std::floating_point Real>
SpectralField<Real> idft(std::span<const std::complex<Real>> coefficients, GridPtr<Real> grid);

/// Multiplies Fourier mode m by exp(eps tau) exp(-tau alpha k_m^2).
template <std::floating_point Real>
SpectralField<Real> diffusion_propagator(const SpectralField<Real>& field, std::complex<Real> alpha,
                                         Real eps, std::complex<Real> tau);

/// Same propagator on raw physical-space samples.
template <std::floating_point Real>
std::vector<std::complex<Real>> diffusion_propagator(const SpectralGrid<Real>& grid,
                                                     std::span<const std::complex<Real>> values,
                                                     std::complex<Real> alpha, Real eps,
                                                     std::complex<Real> tau);

/// max_j |a_j - b_j|. Throws ValidationError on grid mismatch.
template <std::floating_point Real>
Real sup_norm_distance(const SpectralField<Real>& a, const SpectralField<Real>& b);

/// Rows "x value_re value_im", 17 significant digits, LF endings.
template <std::floating_point Real>
void write_snapshot(std::ostream& out, const SpectralField<Real>& field);

}  // namespace pseudosym
