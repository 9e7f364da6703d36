#pragma once

// Trajectories, convergence orders, defects and leading-coefficient fits.

#include <array>
#include <complex>
#include <concepts>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pseudosym/flow_map.hpp"
#include "pseudosym/harmonic.hpp"

namespace pseudosym {

template <std::floating_point Real>
using Observable = std::function<Real(std::span<const Real>)>;

template <std::floating_point Real>
struct Trajectory {
  std::vector<Real> times;
  std::vector<std::vector<Real>> states;
  std::map<std::string, std::vector<Real>> observables;
};

/// Relative imaginary part above which a state no longer counts as real.
inline constexpr double kRealOutputTolerance = 1e-12;

/// Real part of x. Throws DomainError if x carries a relative imaginary
/// part above kRealOutputTolerance.
template <std::floating_point Real>
std::vector<Real> require_real(std::span<const std::complex<Real>> x);

template <std::floating_point Real>
StateVector<Real> complexify(std::span<const Real> x);

/// n_steps applications of method at fixed real tau. States are recorded
/// every `record_stride` steps, plus the initial and final ones. A
/// SingularityError from any stage is rethrown with the step index.
template <std::floating_point Real>
Trajectory<Real> integrate(const FlowMap<Real>& method, std::span<const Real> x0, Real tau,
                           std::size_t n_steps, const Observable<Real>& observable = {},
                           std::size_t record_stride = 1);

/// Final state only.
template <std::floating_point Real>
std::vector<Real> integrate_final(const FlowMap<Real>& method, std::span<const Real> x0, Real tau,
                                  std::size_t n_steps);

/// round(t_final / tau); ValidationError if t_final / tau is off an integer
/// by more than 1e-9 relative.
template <std::floating_point Real>
std::size_t step_count(Real t_final, Real tau);

/// E_tau = |u_tau - u_{tau/2}|_inf at t_final from the same initial data.
template <std::floating_point Real>
Real successive_error(const FlowMap<Real>& method, std::span<const Real> x0, Real tau, Real t_final);

struct PowerLawFit {
  double exponent = 0;
  double coefficient = 0;  // signed for leading_term_fit
  double residual = 0;     // max relative deviation over the samples used
  std::size_t samples_used = 0;
  std::size_t samples_dropped_floor = 0;
  std::size_t samples_dropped_window = 0;
};

/// error ~ C tau^p by least squares on logarithms. Needs >= 3 samples, all
/// positive (DomainError otherwise).
PowerLawFit power_law_fit(std::span<const double> taus, std::span<const double> errors);

struct FitOptions {
  // Samples with |error| <= floor_factor * roundoff_floor are discarded.
  double roundoff_floor = 0;
  // Per-sample floors in the order of the taus; override roundoff_floor when set.
  std::vector<double> sample_floors;
  double floor_factor = 100;
  // The window is narrowed from the large-tau end until the residual is
  // below this (keeping at least min_samples).
  double narrow_residual = 0.02;
  std::size_t min_samples = 3;
  // Power of the correction term in leading_term_fit.
  int correction_power = 2;
};

/// Unit roundoff of Real times |x|_inf times sqrt(n_steps).
template <std::floating_point Real>
double roundoff_floor(double state_norm, std::size_t n_steps = 1);

/// power_law_fit after the roundoff filter and window narrowing. Throws
/// DomainError when fewer than min_samples survive the filter.
PowerLawFit fit_order(std::span<const double> taus, std::span<const double> errors,
                      const FitOptions& options = {});

/// Leading term C tau^p of a signed series. p is the free log-log slope
/// (after fit_order's filter and narrowing); C comes from a weighted least
/// squares fit of e / tau^round(p) = C + D tau^s, which removes the bias of
/// the next term.
PowerLawFit leading_term_fit(std::span<const double> taus, std::span<const double> signed_errors,
                             const FitOptions& options = {});

struct DefectSeries {
  std::vector<double> step_sizes;
  std::vector<double> values;
  std::optional<PowerLawFit> fit;  // empty when every value is at roundoff
};

struct DefectReport {
  std::vector<double> step_sizes;
  std::vector<double> symmetry_defect;
  std::vector<double> symplecticity_defect;
  std::optional<PowerLawFit> symmetry_fit;
  std::optional<PowerLawFit> symplecticity_fit;
};

/// |psi_tau(psi_{-tau}(x0)) - x0|_inf per tau, with a leading-term fit.
template <std::floating_point Real>
DefectSeries symmetry_defect(const FlowMap<Real>& method, std::span<const Real> x0,
                             std::span<const double> taus, const FitOptions& options = {});

/// |J^T S J - S|_inf per tau, J the central finite-difference Jacobian at x0
/// with relative step 1e-5 max(1, |x_j|) and S the canonical form on (q, p).
template <std::floating_point Real>
DefectSeries symplecticity_defect(const FlowMap<Real>& method, std::span<const Real> x0,
                                  std::span<const double> taus, const FitOptions& options = {});

template <std::floating_point Real>
std::vector<std::vector<Real>> finite_difference_jacobian(const FlowMap<Real>& method,
                                                          std::span<const Real> x, Real tau);

/// Matrix forms for linear maps on (q, p): |M(tau) M(-tau) - I| (entrywise max)
/// and |det M(tau) - 1|.
template <std::floating_point Real>
DefectSeries matrix_symmetry_defect(const FlowMap<Real>& method, std::span<const double> taus,
                                    const FitOptions& options = {});

template <std::floating_point Real>
DefectSeries matrix_symplecticity_defect(const FlowMap<Real>& method, std::span<const double> taus,
                                         const FitOptions& options = {});

template <std::floating_point Real>
DefectReport matrix_defect_report(const FlowMap<Real>& method, std::span<const double> taus,
                                  const FitOptions& options = {});

struct EntryFit {
  bool zero_at_this_order = false;  // every sample below the roundoff floor
  PowerLawFit fit;
};

using MatrixFit = std::array<std::array<EntryFit, 2>, 2>;

/// Entrywise leading term of M_H(tau) - psi_tau.
template <std::floating_point Real>
MatrixFit truncation_matrix_fit(const FlowMap<Real>& method, std::span<const double> taus,
                                const FitOptions& options = {});

/// |H(x_k) - H(x_0)| / |H(x_0)| per recorded state. DomainError if H(x_0) = 0.
template <std::floating_point Real>
std::vector<Real> energy_error_series(const Trajectory<Real>& trajectory,
                                      const Observable<Real>& energy);

/// Signed (H(x_k) - H(x_0)) / |H(x_0)|.
template <std::floating_point Real>
std::vector<Real> signed_energy_error_series(const Trajectory<Real>& trajectory,
                                             const Observable<Real>& energy);

/// Least-squares slope of values against times.
double linear_trend(std::span<const double> times, std::span<const double> values);

}  // namespace pseudosym
