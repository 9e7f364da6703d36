#include "pseudosym/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "pseudosym/errors.hpp"

namespace pseudosym {

namespace {

struct Sample {
  double tau;
  double error;
  double floor = 0;
};

// Samples sorted by increasing tau.
std::vector<Sample> sorted_samples(std::span<const double> taus, std::span<const double> errors) {
  if (taus.size() != errors.size()) throw ValidationError("fit: taus and errors differ in length");
  std::vector<Sample> s;
  for (std::size_t i = 0; i < taus.size(); ++i) s.push_back({taus[i], errors[i], 0});
  std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.tau < b.tau; });
  return s;
}

PowerLawFit log_fit(const std::vector<Sample>& s) {
  if (s.size() < 3) throw DomainError("power_law_fit: at least 3 samples required");
  const double n = double(s.size());
  double sx = 0, sy = 0;
  for (const auto& p : s) {
    if (!(p.tau > 0) || !(p.error > 0) || !std::isfinite(p.error))
      throw DomainError("power_law_fit: taus and errors must be positive and finite");
    sx += std::log(p.tau);
    sy += std::log(p.error);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& p : s) {
    const double dx = std::log(p.tau) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.error) - my);
  }
  if (sxx == 0) throw DomainError("power_law_fit: taus must not all be equal");
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  for (const auto& p : s)
    fit.residual = std::max(
        fit.residual, std::abs(fit.coefficient * std::pow(p.tau, fit.exponent) / p.error - 1.0));
  fit.samples_used = s.size();
  return fit;
}

std::vector<Sample> with_floors(std::span<const double> taus, std::span<const double> errors,
                                const FitOptions& options) {
  if (!options.sample_floors.empty() && options.sample_floors.size() != taus.size())
    throw ValidationError("fit: sample_floors and taus differ in length");
  if (taus.size() != errors.size()) throw ValidationError("fit: taus and errors differ in length");
  std::vector<Sample> s;
  for (std::size_t i = 0; i < taus.size(); ++i)
    s.push_back({taus[i], errors[i],
                 options.sample_floors.empty() ? options.roundoff_floor : options.sample_floors[i]});
  std::sort(s.begin(), s.end(), [](const Sample& a, const Sample& b) { return a.tau < b.tau; });
  return s;
}

// Floor filter followed by narrowing from the large-tau end. Returns the
// kept samples (after the floor) and the narrowed fit.
std::pair<std::vector<Sample>, PowerLawFit> filtered_fit(std::span<const double> taus,
                                                         std::span<const double> errors,
                                                         const FitOptions& options) {
  const auto all = with_floors(taus, errors, options);
  std::vector<Sample> kept;
  double threshold = 0;
  for (const auto& p : all) {
    if (p.tau <= 0) throw DomainError("fit: taus must be positive");
    threshold = options.floor_factor * p.floor;
    if (std::isfinite(p.error) && std::abs(p.error) > threshold && p.error != 0)
      kept.push_back({p.tau, std::abs(p.error), p.floor});
  }
  const std::size_t min_samples = std::max<std::size_t>(options.min_samples, 3);
  if (kept.size() < min_samples) {
    std::ostringstream msg;
    msg << "fit: only " << kept.size() << " samples above the roundoff threshold " << threshold;
    throw DomainError(msg.str());
  }
  std::vector<Sample> window = kept;
  PowerLawFit fit = log_fit(window);
  while (fit.residual >= options.narrow_residual && window.size() > min_samples) {
    window.pop_back();
    fit = log_fit(window);
  }
  fit.samples_dropped_floor = all.size() - kept.size();
  fit.samples_dropped_window = kept.size() - window.size();
  return {kept, fit};
}

}  // namespace

template <std::floating_point Real>
std::vector<Real> require_real(std::span<const std::complex<Real>> x) {
  Real scale = 0, imag = 0;
  std::vector<Real> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    scale = std::max(scale, std::abs(x[i]));
    imag = std::max(imag, std::abs(x[i].imag()));
    out[i] = x[i].real();
  }
  if (imag > Real(kRealOutputTolerance) * std::max(scale, Real(1)) || !std::isfinite(double(scale))) {
    std::ostringstream msg;
    msg << "state is not real: imaginary part " << double(imag) << " at scale " << double(scale);
    throw DomainError(msg.str());
  }
  return out;
}

template <std::floating_point Real>
StateVector<Real> complexify(std::span<const Real> x) {
  return StateVector<Real>(x.begin(), x.end());
}

template <std::floating_point Real>
Trajectory<Real> integrate(const FlowMap<Real>& method, std::span<const Real> x0, Real tau,
                           std::size_t n_steps, const Observable<Real>& observable,
                           std::size_t record_stride) {
  if (n_steps == 0) throw ValidationError("integrate: n_steps must be positive");
  if (record_stride == 0) record_stride = 1;
  Trajectory<Real> traj;
  std::vector<Real> y(x0.begin(), x0.end());
  auto record = [&](std::size_t k) {
    traj.times.push_back(Real(k) * tau);
    if (observable) traj.observables["observable"].push_back(observable(y));
    traj.states.push_back(y);
  };
  record(0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    try {
      const StateVector<Real> next = method(complexify<Real>(y), std::complex<Real>(tau));
      y = require_real<Real>(next);
    } catch (const SingularityError& e) {
      throw e.at_step(k);
    }
    if (k % record_stride == 0 || k == n_steps) record(k);
  }
  return traj;
}

template <std::floating_point Real>
std::vector<Real> integrate_final(const FlowMap<Real>& method, std::span<const Real> x0, Real tau,
                                  std::size_t n_steps) {
  StateVector<Real> y = complexify(x0);
  for (std::size_t k = 1; k <= n_steps; ++k) {
    try {
      y = complexify<Real>(require_real<Real>(method(y, std::complex<Real>(tau))));
    } catch (const SingularityError& e) {
      throw e.at_step(k);
    }
  }
  return require_real<Real>(y);
}

template <std::floating_point Real>
std::size_t step_count(Real t_final, Real tau) {
  if (!(tau > 0) || !(t_final > 0)) throw ValidationError("t_final and tau must be positive");
  const Real ratio = t_final / tau;
  const Real rounded = std::round(ratio);
  if (rounded < 1 || std::abs(ratio - rounded) > Real(1e-9) * ratio) {
    std::ostringstream msg;
    msg << "t_final / tau = " << double(ratio) << " is not an integer";
    throw ValidationError(msg.str());
  }
  return static_cast<std::size_t>(rounded);
}

template <std::floating_point Real>
Real successive_error(const FlowMap<Real>& method, std::span<const Real> x0, Real tau, Real t_final) {
  const std::size_t n = step_count(t_final, tau);
  const auto coarse = integrate_final(method, x0, tau, n);
  const auto fine = integrate_final(method, x0, tau / 2, 2 * n);
  Real d = 0;
  for (std::size_t i = 0; i < coarse.size(); ++i) d = std::max(d, std::abs(coarse[i] - fine[i]));
  return d;
}

PowerLawFit power_law_fit(std::span<const double> taus, std::span<const double> errors) {
  return log_fit(sorted_samples(taus, errors));
}

template <std::floating_point Real>
double roundoff_floor(double state_norm, std::size_t n_steps) {
  const double unit = double(std::numeric_limits<Real>::epsilon()) / 2;
  return unit * std::max(state_norm, 1e-300) * std::sqrt(double(std::max<std::size_t>(n_steps, 1)));
}

PowerLawFit fit_order(std::span<const double> taus, std::span<const double> errors,
                      const FitOptions& options) {
  return filtered_fit(taus, errors, options).second;
}

PowerLawFit leading_term_fit(std::span<const double> taus, std::span<const double> signed_errors,
                             const FitOptions& options) {
  auto [kept, fit] = filtered_fit(taus, signed_errors, options);
  // Recover signs of the kept samples.
  std::vector<Sample> all = with_floors(taus, signed_errors, options);
  std::vector<Sample> signed_kept;
  for (const auto& p : all)
    if (std::any_of(kept.begin(), kept.end(), [&](const Sample& k) { return k.tau == p.tau; }))
      signed_kept.push_back(p);

  const double p = std::round(fit.exponent);
  const int s = options.correction_power;
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (const auto& q : signed_kept) {
    const double c = q.error / std::pow(q.tau, p);
    const double t = std::pow(q.tau, s);
    const double r = 1000 * std::max(q.floor, 1e-300) / std::abs(q.error);
    const double w = 1 / (1 + r * r);
    a11 += w;
    a12 += w * t;
    a22 += w * t * t;
    b1 += w * c;
    b2 += w * c * t;
  }
  const double det = a11 * a22 - a12 * a12;
  double coefficient = 0, correction = 0;
  if (std::abs(det) > 1e-300 * std::max(1.0, a11 * a22)) {
    coefficient = (b1 * a22 - b2 * a12) / det;
    correction = (a11 * b2 - a12 * b1) / det;
  } else {
    coefficient = b1 / a11;
  }
  PowerLawFit out = fit;
  out.coefficient = coefficient;
  out.residual = 0;
  for (const auto& q : signed_kept) {
    const double model = std::pow(q.tau, p) * (coefficient + correction * std::pow(q.tau, s));
    out.residual = std::max(out.residual, std::abs(model / q.error - 1));
  }
  return out;
}

namespace {

template <class Real>
double sup_norm(std::span<const Real> x) {
  double r = 0;
  for (const auto& v : x) r = std::max(r, double(std::abs(v)));
  return r;
}

std::optional<PowerLawFit> try_fit(std::span<const double> taus, std::span<const double> values,
                                   const FitOptions& options) {
  try {
    return leading_term_fit(taus, values, options);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

template <class Real>
FitOptions with_floor(FitOptions options, double state_norm) {
  if (options.roundoff_floor == 0) options.roundoff_floor = roundoff_floor<Real>(state_norm, 1);
  return options;
}

}  // namespace

template <std::floating_point Real>
DefectSeries symmetry_defect(const FlowMap<Real>& method, std::span<const Real> x0,
                             std::span<const double> taus, const FitOptions& options) {
  DefectSeries out;
  const StateVector<Real> x = complexify(x0);
  for (double tau : taus) {
    const auto back = require_real<Real>(method(method(x, Real(-tau)), Real(tau)));
    double d = 0;
    for (std::size_t i = 0; i < back.size(); ++i) d = std::max(d, double(std::abs(back[i] - x0[i])));
    out.step_sizes.push_back(tau);
    out.values.push_back(d);
  }
  out.fit = try_fit(out.step_sizes, out.values, with_floor<Real>(options, sup_norm(x0)));
  return out;
}

template <std::floating_point Real>
std::vector<std::vector<Real>> finite_difference_jacobian(const FlowMap<Real>& method,
                                                          std::span<const Real> x, Real tau) {
  const std::size_t n = x.size();
  std::vector<std::vector<Real>> jac(n, std::vector<Real>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const Real h = Real(1e-5) * std::max(Real(1), std::abs(x[j]));
    std::vector<Real> plus(x.begin(), x.end()), minus(x.begin(), x.end());
    plus[j] += h;
    minus[j] -= h;
    const auto fp = require_real<Real>(method(complexify<Real>(plus), tau));
    const auto fm = require_real<Real>(method(complexify<Real>(minus), tau));
    for (std::size_t i = 0; i < n; ++i) jac[i][j] = (fp[i] - fm[i]) / (plus[j] - minus[j]);
  }
  return jac;
}

template <std::floating_point Real>
DefectSeries symplecticity_defect(const FlowMap<Real>& method, std::span<const Real> x0,
                                  std::span<const double> taus, const FitOptions& options) {
  const std::size_t n = x0.size();
  if (n % 2 != 0) throw DomainError("symplecticity_defect: state dimension must be even");
  const std::size_t d = n / 2;
  auto s_entry = [d](std::size_t i, std::size_t j) -> Real {
    if (i < d && j == i + d) return 1;
    if (i >= d && j + d == i) return -1;
    return 0;
  };
  DefectSeries out;
  for (double tau : taus) {
    const auto jac = finite_difference_jacobian(method, x0, Real(tau));
    double defect = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        // (J^T S J)_{ab} = sum_{i,j} J_{ia} S_{ij} J_{jb}
        Real sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t j = i < d ? i + d : i - d;
          sum += jac[i][a] * s_entry(i, j) * jac[j][b];
        }
        defect = std::max(defect, double(std::abs(sum - s_entry(a, b))));
      }
    out.step_sizes.push_back(tau);
    out.values.push_back(defect);
  }
  // Differencing error dominates roundoff here.
  FitOptions opts = options;
  if (opts.roundoff_floor == 0) opts.roundoff_floor = 1e-12;
  out.fit = try_fit(out.step_sizes, out.values, opts);
  return out;
}

template <std::floating_point Real>
DefectSeries matrix_symmetry_defect(const FlowMap<Real>& method, std::span<const double> taus,
                                    const FitOptions& options) {
  DefectSeries out;
  for (double tau : taus) {
    const auto m = matrix_of(method, std::complex<Real>(tau)) *
                   matrix_of(method, std::complex<Real>(-tau));
    out.step_sizes.push_back(tau);
    out.values.push_back(double((m - HOMatrix<Real>::identity()).max_abs()));
  }
  out.fit = try_fit(out.step_sizes, out.values, with_floor<Real>(options, 1.0));
  return out;
}

template <std::floating_point Real>
DefectSeries matrix_symplecticity_defect(const FlowMap<Real>& method, std::span<const double> taus,
                                         const FitOptions& options) {
  DefectSeries out;
  for (double tau : taus) {
    const auto det = matrix_of(method, std::complex<Real>(tau)).determinant();
    out.step_sizes.push_back(tau);
    out.values.push_back(double(std::abs(det - Real(1))));
  }
  out.fit = try_fit(out.step_sizes, out.values, with_floor<Real>(options, 1.0));
  return out;
}

template <std::floating_point Real>
DefectReport matrix_defect_report(const FlowMap<Real>& method, std::span<const double> taus,
                                  const FitOptions& options) {
  const auto sym = matrix_symmetry_defect(method, taus, options);
  const auto symp = matrix_symplecticity_defect(method, taus, options);
  return {sym.step_sizes, sym.values, symp.values, sym.fit, symp.fit};
}

template <std::floating_point Real>
MatrixFit truncation_matrix_fit(const FlowMap<Real>& method, std::span<const double> taus,
                                const FitOptions& options) {
  std::array<std::array<std::vector<double>, 2>, 2> series;
  for (double tau : taus) {
    const std::complex<Real> t(tau);
    const auto diff = ho_exact<Real>(t) - matrix_of(method, t);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) series[i][j].push_back(double(diff(i, j).real()));
  }
  const FitOptions opts = with_floor<Real>(options, 1.0);
  MatrixFit out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto fit = try_fit(taus, series[i][j], opts);
      out[i][j].zero_at_this_order = !fit.has_value();
      if (fit) out[i][j].fit = *fit;
    }
  return out;
}

template <std::floating_point Real>
std::vector<Real> signed_energy_error_series(const Trajectory<Real>& trajectory,
                                             const Observable<Real>& energy) {
  if (trajectory.states.empty()) return {};
  const Real h0 = energy(trajectory.states.front());
  if (h0 == 0 || !std::isfinite(double(h0)))
    throw DomainError("energy_error_series: H(x0) is zero; use an absolute error");
  std::vector<Real> out;
  out.reserve(trajectory.states.size());
  for (const auto& x : trajectory.states) out.push_back((energy(x) - h0) / std::abs(h0));
  return out;
}

template <std::floating_point Real>
std::vector<Real> energy_error_series(const Trajectory<Real>& trajectory,
                                      const Observable<Real>& energy) {
  auto out = signed_energy_error_series(trajectory, energy);
  for (auto& v : out) v = std::abs(v);
  return out;
}

double linear_trend(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw ValidationError("linear_trend: need >= 2 matching samples");
  const double n = double(times.size());
  const double mt = std::accumulate(times.begin(), times.end(), 0.0) / n;
  const double mv = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double stt = 0, stv = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    stt += (times[i] - mt) * (times[i] - mt);
    stv += (times[i] - mt) * (values[i] - mv);
  }
  if (stt == 0) throw ValidationError("linear_trend: times must not all be equal");
  return stv / stt;
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                            \
  template std::vector<Real> require_real<Real>(std::span<const std::complex<Real>>);         \
  template StateVector<Real> complexify<Real>(std::span<const Real>);                         \
  template Trajectory<Real> integrate<Real>(const FlowMap<Real>&, std::span<const Real>, Real, \
                                            std::size_t, const Observable<Real>&, std::size_t); \
  template std::vector<Real> integrate_final<Real>(const FlowMap<Real>&, std::span<const Real>, \
                                                   Real, std::size_t);                        \
  template std::size_t step_count<Real>(Real, Real);                                          \
  template Real successive_error<Real>(const FlowMap<Real>&, std::span<const Real>, Real, Real); \
  template double roundoff_floor<Real>(double, std::size_t);                                  \
  template DefectSeries symmetry_defect<Real>(const FlowMap<Real>&, std::span<const Real>,    \
                                              std::span<const double>, const FitOptions&);    \
  template DefectSeries symplecticity_defect<Real>(                                           \
      const FlowMap<Real>&, std::span<const Real>, std::span<const double>, const FitOptions&); \
  template std::vector<std::vector<Real>> finite_difference_jacobian<Real>(                   \
      const FlowMap<Real>&, std::span<const Real>, Real);                                     \
  template DefectSeries matrix_symmetry_defect<Real>(const FlowMap<Real>&,                    \
                                                     std::span<const double>, const FitOptions&); \
  template DefectSeries matrix_symplecticity_defect<Real>(                                    \
      const FlowMap<Real>&, std::span<const double>, const FitOptions&);                      \
  template DefectReport matrix_defect_report<Real>(const FlowMap<Real>&,                      \
                                                   std::span<const double>, const FitOptions&); \
  template MatrixFit truncation_matrix_fit<Real>(const FlowMap<Real>&, std::span<const double>, \
                                                 const FitOptions&);                          \
  template std::vector<Real> energy_error_series<Real>(const Trajectory<Real>&,               \
                                                       const Observable<Real>&);              \
  template std::vector<Real> signed_energy_error_series<Real>(const Trajectory<Real>&,        \
                                                              const Observable<Real>&);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
