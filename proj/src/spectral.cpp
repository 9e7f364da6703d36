#include "pseudosym/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

#include "pseudosym/errors.hpp"

namespace pseudosym {

namespace detail {

namespace {
// The FFTW planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

template <>
class FftPlans<double> {
 public:
  explicit FftPlans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(n);
    const int flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void run(bool forward, std::complex<double>* data) const {
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(forward ? forward_ : backward_, p, p);
  }

 private:
  fftw_plan forward_;
  fftw_plan backward_;
};

template <>
class FftPlans<long double> {
 public:
  explicit FftPlans(std::size_t n) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftwl_alloc_complex(n);
    const int flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftwl_plan_dft_1d(int(n), buf, buf, FFTW_FORWARD, flags);
    backward_ = fftwl_plan_dft_1d(int(n), buf, buf, FFTW_BACKWARD, flags);
    fftwl_free(buf);
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftwl_destroy_plan(forward_);
    fftwl_destroy_plan(backward_);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;

  void run(bool forward, std::complex<long double>* data) const {
    auto* p = reinterpret_cast<fftwl_complex*>(data);
    fftwl_execute_dft(forward ? forward_ : backward_, p, p);
  }

 private:
  fftwl_plan forward_;
  fftwl_plan backward_;
};

}  // namespace detail

template <std::floating_point Real>
SpectralGrid<Real>::SpectralGrid(Real domain_start, Real domain_length, std::size_t n_points)
    : start_(domain_start), length_(domain_length), n_(n_points) {
  if (n_points < 2 || !std::has_single_bit(n_points)) {
    throw ValidationError("spectral grid: n_points must be a power of two >= 2, got " +
                          std::to_string(n_points));
  }
  if (!(domain_length > 0) || !std::isfinite(domain_length) || !std::isfinite(domain_start)) {
    throw ValidationError("spectral grid: domain length must be positive and finite");
  }
  wavenumbers_.resize(n_);
  const Real base = Real(2) * std::numbers::pi_v<Real> / length_;
  const auto half = static_cast<long long>(n_ / 2);
  for (std::size_t m = 0; m < n_; ++m) {
    const long long signed_m = static_cast<long long>(m) < half ? static_cast<long long>(m)
                                                                : static_cast<long long>(m) - 2 * half;
    wavenumbers_[m] = base * Real(signed_m);
  }
  plans_ = std::make_shared<const detail::FftPlans<Real>>(n_);
}

template <std::floating_point Real>
std::vector<Real> SpectralGrid<Real>::nodes() const {
  std::vector<Real> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

template <std::floating_point Real>
void SpectralGrid<Real>::forward(std::span<const std::complex<Real>> in,
                                 std::span<std::complex<Real>> out) const {
  if (in.size() != n_ || out.size() != n_)
    throw ValidationError("dft: length mismatch with grid of " + std::to_string(n_) + " points");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  plans_->run(true, out.data());
}

template <std::floating_point Real>
void SpectralGrid<Real>::backward(std::span<const std::complex<Real>> in,
                                  std::span<std::complex<Real>> out) const {
  if (in.size() != n_ || out.size() != n_)
    throw ValidationError("idft: length mismatch with grid of " + std::to_string(n_) + " points");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  plans_->run(false, out.data());
  const Real scale = Real(1) / Real(n_);
  for (auto& v : out) v *= scale;
}

template <std::floating_point Real>
SpectralField<Real>::SpectralField(GridPtr<Real> g, std::vector<std::complex<Real>> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw ValidationError("spectral field: null grid");
  if (values.size() != grid->size())
    throw ValidationError("spectral field: " + std::to_string(values.size()) +
                          " values for a grid of " + std::to_string(grid->size()) + " points");
}

template <std::floating_point Real>
std::vector<std::complex<Real>> dft(const SpectralField<Real>& field) {
  std::vector<std::complex<Real>> out(field.values.size());
  field.grid->forward(field.values, out);
  return out;
}

template <std::floating_point Real>
SpectralField<Real> idft(std::span<const std::complex<Real>> coefficients, GridPtr<Real> grid) {
  if (coefficients.size() != grid->size())
    throw ValidationError("idft: " + std::to_string(coefficients.size()) +
                          " coefficients for a grid of " + std::to_string(grid->size()) + " points");
  std::vector<std::complex<Real>> out(coefficients.size());
  grid->backward(coefficients, out);
  return SpectralField<Real>(std::move(grid), std::move(out));
}

template <std::floating_point Real>
std::vector<std::complex<Real>> diffusion_propagator(const SpectralGrid<Real>& grid,
                                                     std::span<const std::complex<Real>> values,
                                                     std::complex<Real> alpha, Real eps,
                                                     std::complex<Real> tau) {
  std::vector<std::complex<Real>> modes(values.size());
  grid.forward(values, modes);
  const auto& k = grid.wavenumbers();
  const std::complex<Real> growth = eps * tau;
  for (std::size_t m = 0; m < modes.size(); ++m)
    modes[m] *= std::exp(growth - tau * alpha * (k[m] * k[m]));
  grid.backward(modes, modes);
  return modes;
}

template <std::floating_point Real>
SpectralField<Real> diffusion_propagator(const SpectralField<Real>& field, std::complex<Real> alpha,
                                         Real eps, std::complex<Real> tau) {
  return SpectralField<Real>(field.grid,
                             diffusion_propagator(*field.grid,
                                                  std::span<const std::complex<Real>>(field.values),
                                                  alpha, eps, tau));
}

template <std::floating_point Real>
Real sup_norm_distance(const SpectralField<Real>& a, const SpectralField<Real>& b) {
  if (!a.grid->same_as(*b.grid) || a.values.size() != b.values.size())
    throw ValidationError("sup_norm_distance: fields live on different grids");
  Real d = 0;
  for (std::size_t j = 0; j < a.values.size(); ++j) d = std::max(d, std::abs(a.values[j] - b.values[j]));
  return d;
}

template <std::floating_point Real>
void write_snapshot(std::ostream& out, const SpectralField<Real>& field) {
  char line[128];
  for (std::size_t j = 0; j < field.values.size(); ++j) {
    std::snprintf(line, sizeof line, "%.16e %.16e %.16e\n",
                  static_cast<double>(field.grid->node(j)),
                  static_cast<double>(field.values[j].real()),
                  static_cast<double>(field.values[j].imag()));
    out << line;
  }
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                              \
  template class SpectralGrid<Real>;                                                            \
  template struct SpectralField<Real>;                                                          \
  template std::vector<std::complex<Real>> dft<Real>(const SpectralField<Real>&);               \
  template SpectralField<Real> idft<Real>(std::span<const std::complex<Real>>, GridPtr<Real>);   \
  template SpectralField<Real> diffusion_propagator<Real>(const SpectralField<Real>&,           \
                                                          std::complex<Real>, Real,             \
                                                          std::complex<Real>);                  \
  template std::vector<std::complex<Real>> diffusion_propagator<Real>(                          \
      const SpectralGrid<Real>&, std::span<const std::complex<Real>>, std::complex<Real>, Real, \
      std::complex<Real>);                                                                      \
  template Real sup_norm_distance<Real>(const SpectralField<Real>&, const SpectralField<Real>&); \
  template void write_snapshot<Real>(std::ostream&, const SpectralField<Real>&);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
