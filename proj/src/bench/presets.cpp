#include "pseudosym/bench/presets.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "pseudosym/bench/parallel.hpp"
#include "pseudosym/cgl.hpp"
#include "pseudosym/coefficients.hpp"
#include "pseudosym/composition.hpp"
#include "pseudosym/diagnostics.hpp"
#include "pseudosym/errors.hpp"
#include "pseudosym/fisher.hpp"
#include "pseudosym/harmonic.hpp"
#include "pseudosym/kepler.hpp"
#include "pseudosym/spectral.hpp"
#include "pseudosym/splitting.hpp"

namespace pseudosym::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double param(const ExperimentConfig& c, const std::string& key, double fallback) {
  const auto it = c.problem_params.find(key);
  return it == c.problem_params.end() ? fallback : it->second;
}

template <class Real>
struct Setup {
  FlowMap<Real> flow_a;
  FlowMap<Real> flow_b;
  std::vector<Real> x0;
  Observable<Real> energy;
  double state_norm = 1;
  GridPtr<Real> grid;
};

template <class Real>
Setup<Real> make_setup(const ExperimentConfig& c) {
  switch (c.problem) {
    case Problem::harmonic: {
      std::vector<Real> x0{Real(param(c, "q0", 2.5)), Real(param(c, "p0", 0.0))};
      Observable<Real> energy = [](std::span<const Real> x) { return ho_energy<Real>(x); };
      return {ho_drift_flow<Real>(), ho_kick_flow<Real>(), x0, energy,
              std::max(std::abs(double(x0[0])), std::abs(double(x0[1]))), nullptr};
    }
    case Problem::kepler: {
      const auto init = kepler_initial_conditions<Real>(Real(param(c, "e", 0.6)));
      const auto xc = init.to_vector();
      std::vector<Real> x0 = require_real<Real>(xc);
      Observable<Real> energy = [](std::span<const Real> x) { return kepler_energy<Real>(x); };
      double norm = 0;
      for (Real v : x0) norm = std::max(norm, std::abs(double(v)));
      return {kepler_drift_flow<Real>(), kepler_kick_flow<Real>(), x0, energy, norm, nullptr};
    }
    case Problem::fisher: {
      auto grid = make_grid<Real>(0, 1, c.grid_points);
      const auto u0 = fisher_initial_condition<Real>(grid);
      return {fisher_diffusion_flow<Real>(grid), fisher_reaction_flow_map<Real>(),
              require_real<Real>(u0.values), {}, 1.0, grid};
    }
    case Problem::cgl: {
      auto grid = make_grid<Real>(-100, 200, c.grid_points);
      const CGLParams<Real> params(Real(param(c, "c1", 1)), Real(param(c, "c3", -2)),
                                   Real(param(c, "eps", 1)));
      const auto init = cgl_initial_condition<Real>(grid).to_vector();
      return {cgl_linear_flow_map<Real>(grid, params), cgl_nonlinear_flow_map<Real>(grid, params),
              require_real<Real>(init), {}, 1.0, grid};
    }
  }
  throw ValidationError("unknown problem");
}

// Wraps a flow so that each call bumps a shared counter.
template <class Real>
FlowMap<Real> counted(const FlowMap<Real>& flow, std::shared_ptr<std::atomic<long long>> counter) {
  return FlowMap<Real>(
      [flow, counter](const StateVector<Real>& x, std::complex<Real> tau) {
        ++*counter;
        return flow(x, tau);
      },
      flow.meta(), flow.name(), flow.stage_argument());
}

template <class Real>
FlowMap<Real> make_base(BaseMethod b, const FlowMap<Real>& splitting_base) {
  return b == BaseMethod::strang ? splitting_base
                                 : real_projection(splitting_base, splitting_base.meta());
}

template <class Real>
FlowMap<Real> raw_splitting(BaseMethod b, const Setup<Real>& s) {
  return b == BaseMethod::strang ? strang(s.flow_a, s.flow_b) : s4sim(s.flow_a, s.flow_b);
}

template <class Real>
struct MethodEntry {
  std::string base;
  std::string name;
  int level = 0;
  int declared_order = 0;
  long long base_calls_per_step = 0;  // evaluations of the splitting per step
  FlowMap<Real> flow;
};

template <class Real>
void append_family(std::vector<MethodEntry<Real>>& out, BaseMethod b, int levels,
                   const ExperimentConfig& c, const Setup<Real>& s) {
  const FlowMap<Real> base = make_base(b, raw_splitting(b, s));
  auto counter = std::make_shared<std::atomic<long long>>(0);
  const FlowMap<Real> counted_base = make_base(b, counted(raw_splitting(b, s), counter));
  const StateVector<Real> x0 = complexify<Real>(s.x0);
  const std::complex<Real> probe(Real(c.tau_list.empty() ? 0.01 : c.tau_list.back()));
  auto calls = [&](const FlowMap<Real>& f) {
    *counter = 0;
    f(x0, probe);
    return counter->load();
  };

  out.push_back({to_string(b), to_string(b), 0, base.meta().order, calls(counted_base), base});
  if (levels == 0) return;
  const auto family = recursive_family(base, levels);
  const auto counted_family = recursive_family(counted_base, levels);
  for (int i = 0; i < levels; ++i)
    out.push_back({to_string(b), "R" + std::to_string(i + 1), i + 1, family.levels[i].meta().order,
                   calls(counted_family.levels[i]), family.levels[i]});
}

template <class Real>
std::vector<MethodEntry<Real>> make_methods(const ExperimentConfig& c, const Setup<Real>& s) {
  std::vector<MethodEntry<Real>> out;
  append_family(out, c.base_method, c.levels, c, s);
  if (c.companion_levels > 0) {
    const BaseMethod other =
        c.base_method == BaseMethod::strang ? BaseMethod::s4sim : BaseMethod::strang;
    append_family(out, other, c.companion_levels, c, s);
  }
  return out;
}

std::string problem_name(const ExperimentConfig& c) { return to_string(c.problem); }

PresetResult start_result(const ExperimentConfig& c) {
  PresetResult r;
  r.preset = c.preset;
  r.metadata["config"] = to_json(c);
  r.metadata["precision"] = to_string(c.precision);
  r.metadata["notes"] = nlohmann::json::array();
  return r;
}

struct CellOutcome {
  std::vector<double> values;
  std::string failure;  // empty on success
  std::string snapshot;
};

template <class F>
CellOutcome guarded(std::size_t width, F&& body) {
  try {
    return body();
  } catch (const SingularityError& e) {
    return {std::vector<double>(width, kNaN), e.what(), {}};
  }
}

double local_slope(double tau_prev, double e_prev, double tau, double e) {
  if (!(e_prev > 0) || !(e > 0)) return kNaN;
  return std::log(e_prev / e) / std::log(tau_prev / tau);
}

// ---------------------------------------------------------------- order runs

template <class Real>
PresetResult run_order(const ExperimentConfig& c) {
  PresetResult result = start_result(c);
  const Setup<Real> s = make_setup<Real>(c);
  const auto methods = make_methods(c, s);
  const auto& taus = c.tau_list;
  const bool pde = c.problem == Problem::fisher || c.problem == Problem::cgl;
  const std::size_t n_cells = methods.size() * taus.size();
  // deepest level of the main family, smallest tau
  const std::size_t snapshot_cell = std::size_t(c.levels + 1) * taus.size() - 1;

  auto outcomes = parallel_map<CellOutcome>(n_cells, c.threads, [&](std::size_t cell) {
    const auto& m = methods[cell / taus.size()];
    const Real tau = Real(taus[cell % taus.size()]);
    return guarded(1, [&]() -> CellOutcome {
      const std::size_t n = step_count(Real(c.t_final), tau);
      if (!pde) {
        const auto xf = integrate_final(m.flow, std::span<const Real>(s.x0), tau, n);
        const Real h0 = s.energy(s.x0);
        return {{double(std::abs((s.energy(xf) - h0) / h0))}, {}, {}};
      }
      const auto coarse = integrate_final(m.flow, std::span<const Real>(s.x0), tau, n);
      const auto fine = integrate_final(m.flow, std::span<const Real>(s.x0), tau / 2, 2 * n);
      double e = 0;
      for (std::size_t i = 0; i < coarse.size(); ++i)
        e = std::max(e, double(std::abs(coarse[i] - fine[i])));
      std::string snap;
      if (cell == snapshot_cell) {
        const std::size_t np = s.grid->size();
        SpectralField<Real> u(s.grid);
        for (std::size_t j = 0; j < np; ++j)
          u.values[j] = c.problem == Problem::cgl ? std::complex<Real>(fine[j], fine[j + np])
                                                  : std::complex<Real>(fine[j]);
        std::ostringstream os;
        write_snapshot(os, u);
        snap = os.str();
      }
      return {{e}, {}, snap};
    });
  });

  const std::string metric = pde ? "E_tau" : "energy_error";
  ResultTable table{c.preset,
                    {"problem", "base", "method", "level", "tau", "n_steps", "base_evaluations",
                     metric, "local_slope", "slope"},
                    {}};
  ResultTable fits{c.preset + "_fits",
                   {"problem", "base", "method", "level", "declared_order", "slope", "coefficient",
                    "residual", "samples_used", "samples_dropped"},
                   {}};

  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const auto& m = methods[mi];
    std::vector<double> ft, fe;
    FitOptions options;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      const auto& o = outcomes[mi * taus.size() + ti];
      ++result.cells;
      if (!o.failure.empty()) result.failures.push_back({m.name, taus[ti], o.failure});
      if (std::isfinite(o.values[0])) {
        const std::size_t n = step_count(Real(c.t_final), Real(taus[ti])) * (pde ? 2 : 1);
        ft.push_back(taus[ti]);
        fe.push_back(o.values[0]);
        options.sample_floors.push_back(roundoff_floor<Real>(s.state_norm, n));
      }
    }
    PowerLawFit fit;
    bool ok = true;
    try {
      fit = fit_order(ft, fe, options);
    } catch (const DomainError& e) {
      ok = false;
      result.metadata["notes"].push_back(m.name + ": " + e.what());
    }
    const double slope = ok ? fit.exponent : kNaN;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      const double e = outcomes[mi * taus.size() + ti].values[0];
      const double ls = ti == 0 ? kNaN
                                : local_slope(taus[ti - 1], outcomes[mi * taus.size() + ti - 1].values[0],
                                              taus[ti], e);
      const auto n = std::int64_t(step_count(Real(c.t_final), Real(taus[ti])));
      table.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                     taus[ti], n, std::int64_t(m.base_calls_per_step) * n * (pde ? 3 : 1), e, ls,
                     slope});
    }
    fits.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                  std::int64_t(m.declared_order), slope, ok ? fit.coefficient : kNaN,
                  ok ? fit.residual : kNaN, std::int64_t(ok ? fit.samples_used : 0),
                  std::int64_t(ok ? fit.samples_dropped_floor + fit.samples_dropped_window : ft.size())});
  }
  result.tables = {table, fits};
  if (pde && !outcomes[snapshot_cell].snapshot.empty())
    result.snapshots.push_back({c.preset + "_final_u", outcomes[snapshot_cell].snapshot});
  return result;
}

// --------------------------------------------------------------- energy runs

template <class Real>
PresetResult run_energy(const ExperimentConfig& c) {
  PresetResult result = start_result(c);
  const Setup<Real> s = make_setup<Real>(c);
  const auto methods = make_methods(c, s);
  const auto& taus = c.tau_list;
  const std::size_t n_cells = methods.size() * taus.size();
  constexpr std::size_t kMaxRecorded = 2000;

  struct EnergyOutcome {
    CellOutcome cell;
    std::vector<double> times;
    std::vector<double> errors;
  };
  auto outcomes = parallel_map<EnergyOutcome>(n_cells, c.threads, [&](std::size_t cell) {
    const auto& m = methods[cell / taus.size()];
    const Real tau = Real(taus[cell % taus.size()]);
    EnergyOutcome out;
    out.cell = guarded(3, [&]() -> CellOutcome {
      const std::size_t n = step_count(Real(c.t_final), tau);
      const std::size_t stride = std::max<std::size_t>(1, n / kMaxRecorded);
      const auto traj = integrate(m.flow, std::span<const Real>(s.x0), tau, n, {}, stride);
      const auto err = signed_energy_error_series(traj, s.energy);
      double max_err = 0;
      for (std::size_t k = 0; k < err.size(); ++k) {
        out.times.push_back(double(traj.times[k]));
        out.errors.push_back(double(err[k]));
        max_err = std::max(max_err, std::abs(double(err[k])));
      }
      return {{std::abs(out.errors.back()), max_err, linear_trend(out.times, out.errors)}, {}, {}};
    });
    return out;
  });

  ResultTable table{c.preset,
                    {"problem", "base", "method", "level", "tau", "n_steps", "final_energy_error",
                     "max_energy_error", "drift_rate"},
                    {}};
  ResultTable series{c.preset + "_series", {"method", "level", "tau", "t", "energy_error"}, {}};
  ResultTable fits{c.preset + "_fits",
                   {"problem", "base", "method", "level", "declared_order", "drift_slope",
                    "drift_coefficient", "residual"},
                   {}};
  for (std::size_t mi = 0; mi < methods.size(); ++mi) {
    const auto& m = methods[mi];
    std::vector<double> ft, fr;
    for (std::size_t ti = 0; ti < taus.size(); ++ti) {
      const auto& o = outcomes[mi * taus.size() + ti];
      ++result.cells;
      if (!o.cell.failure.empty()) result.failures.push_back({m.name, taus[ti], o.cell.failure});
      table.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                     taus[ti], std::int64_t(step_count(Real(c.t_final), Real(taus[ti]))),
                     o.cell.values[0], o.cell.values[1], o.cell.values[2]});
      for (std::size_t k = 0; k < o.times.size(); ++k)
        series.add_row({m.name, std::int64_t(m.level), taus[ti], o.times[k], o.errors[k]});
      if (std::isfinite(o.cell.values[2]) && o.cell.values[2] != 0) {
        ft.push_back(taus[ti]);
        fr.push_back(std::abs(o.cell.values[2]));
      }
    }
    PowerLawFit fit;
    bool ok = ft.size() >= 3;
    if (ok) {
      try {
        fit = power_law_fit(ft, fr);
      } catch (const DomainError&) {
        ok = false;
      }
    }
    fits.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                  std::int64_t(m.declared_order), ok ? fit.exponent : kNaN,
                  ok ? fit.coefficient : kNaN, ok ? fit.residual : kNaN});
  }
  result.tables = {table, fits, series};
  return result;
}

// ------------------------------------------------------- oscillator coefficients

template <class Real>
PresetResult run_table1(const ExperimentConfig& c) {
  PresetResult result = start_result(c);
  const Setup<Real> s = make_setup<Real>(c);
  const auto methods = make_methods(c, s);
  const auto& taus = c.tau_list;

  struct Table1Outcome {
    std::vector<std::array<double, 6>> samples;
    MatrixFit truncation;
    DefectReport defects;
  };
  auto outcomes = parallel_map<Table1Outcome>(methods.size(), c.threads, [&](std::size_t i) {
    const auto& m = methods[i];
    Table1Outcome o;
    for (double tau : taus) {
      const std::complex<Real> t(tau);
      const auto psi = matrix_of(m.flow, t);
      const auto diff = ho_exact<Real>(t) - psi;
      const auto sym = psi * matrix_of(m.flow, -t) - HOMatrix<Real>::identity();
      o.samples.push_back({double(diff(0, 0).real()), double(diff(0, 1).real()),
                           double(diff(1, 0).real()), double(diff(1, 1).real()),
                           double(sym.max_abs()), double(std::abs(psi.determinant() - Real(1)))});
    }
    o.truncation = truncation_matrix_fit(m.flow, taus);
    o.defects = matrix_defect_report(m.flow, taus);
    return o;
  });

  ResultTable table{c.preset,
                    {"problem", "base", "method", "level", "tau", "trunc_00", "trunc_01", "trunc_10",
                     "trunc_11", "symmetry_defect", "det_defect"},
                    {}};
  ResultTable fits{c.preset + "_fits",
                   {"problem", "base", "method", "level", "quantity", "zero_at_this_order",
                    "exponent", "coefficient", "residual", "samples_used"},
                   {}};
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const auto& m = methods[i];
    const auto& o = outcomes[i];
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const auto& v = o.samples[t];
      table.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                     taus[t], v[0], v[1], v[2], v[3], v[4], v[5]});
    }
    auto add_fit = [&](const std::string& quantity, bool zero, const PowerLawFit& f) {
      fits.add_row({problem_name(c), m.base, m.name, std::int64_t(m.level),
                    quantity, std::int64_t(zero), zero ? kNaN : f.exponent,
                    zero ? kNaN : f.coefficient, zero ? kNaN : f.residual,
                    std::int64_t(zero ? 0 : f.samples_used)});
    };
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        add_fit("trunc_" + std::to_string(a) + std::to_string(b),
                o.truncation[a][b].zero_at_this_order, o.truncation[a][b].fit);
    add_fit("symmetry_defect", !o.defects.symmetry_fit, o.defects.symmetry_fit.value_or(PowerLawFit{}));
    add_fit("det_defect", !o.defects.symplecticity_fit,
            o.defects.symplecticity_fit.value_or(PowerLawFit{}));
  }
  result.tables = {table, fits};
  return result;
}

// ------------------------------------------------------------ coefficients

template <class Real>
PresetResult run_audit(const ExperimentConfig& c) {
  PresetResult result = start_result(c);
  ResultTable table{c.preset,
                    {"base", "level", "order", "pseudo_symmetry_order", "pseudo_symplecticity_order",
                     "order_capped", "gamma_re", "gamma_im", "max_argument",
                     "max_argument_over_half_pi", "all_positive_real"},
                    {}};
  ResultTable products{c.preset + "_products", {"base", "level", "index", "re", "im", "argument"}, {}};
  const Real half_pi = std::numbers::pi_v<Real> / 2;
  for (BaseMethod b : {BaseMethod::strang, BaseMethod::s4sim}) {
    const FlowMap<Real> base =
        make_base(b, b == BaseMethod::strang ? strang(ho_drift_flow<Real>(), ho_kick_flow<Real>())
                                             : s4sim(ho_drift_flow<Real>(), ho_kick_flow<Real>()));
    const auto family = recursive_family(base, c.levels);
    for (int i = 1; i <= c.levels; ++i) {
      RecursiveFamily<Real> prefix = family;
      prefix.levels.erase(prefix.levels.begin() + i, prefix.levels.end());
      prefix.coefficient_products.resize(i);
      const auto args = coefficient_arguments(prefix);
      const auto meta = family.levels[i - 1].meta();
      const auto g = gamma_smallest_phase<Real>(family.base_order + 2 * (i - 1));
      table.add_row({to_string(b), std::int64_t(i), order_to_string(meta.order),
                     order_to_string(meta.pseudo_symmetry_order),
                     order_to_string(meta.pseudo_symplecticity_order), std::int64_t(meta.order_capped),
                     double(g.real()), double(g.imag()), double(args.max_argument),
                     double(args.max_argument / half_pi), std::int64_t(args.all_positive_real)});
      const auto& p = family.coefficient_products[i - 1];
      for (std::size_t j = 0; j < p.size(); ++j)
        products.add_row({to_string(b), std::int64_t(i), std::int64_t(j), double(p[j].real()),
                          double(p[j].imag()), double(std::arg(p[j]))});
    }
    for (const auto& w : family.warnings) result.metadata["notes"].push_back(to_string(b) + ": " + w);
  }
  result.tables = {table, products};
  return result;
}

template <class Real>
PresetResult run_typed(const ExperimentConfig& c) {
  if (c.preset == "ho-table1") return run_table1<Real>(c);
  if (c.preset == "ho-energy" || c.preset == "kepler-energy") return run_energy<Real>(c);
  if (c.preset == "kepler-order" || c.preset == "fisher-order" || c.preset == "cgl-order")
    return run_order<Real>(c);
  if (c.preset == "coeff-audit") return run_audit<Real>(c);
  throw ValidationError("unknown preset '" + c.preset + "'");
}

}  // namespace

PresetResult run(const ExperimentConfig& config) {
  validate(config);
  return config.precision == Precision::f64 ? run_typed<double>(config)
                                            : run_typed<long double>(config);
}

PresetResult run_preset(const std::string& name, const nlohmann::json& overrides, bool paper_scale) {
  ExperimentConfig c = apply_overrides(preset_defaults(name, paper_scale), overrides);
  validate(c);
  return run(c);
}

}  // namespace pseudosym::bench
