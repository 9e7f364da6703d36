#include "pseudosym/composition.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "pseudosym/coefficients.hpp"
#include "pseudosym/errors.hpp"

namespace pseudosym {

namespace {

constexpr double kRealStateTolerance = 1e-14;

template <class Real>
bool is_real_state(const StateVector<Real>& x) {
  Real scale = 1, imag = 0;
  for (const auto& v : x) {
    scale = std::max(scale, std::abs(v));
    imag = std::max(imag, std::abs(v.imag()));
  }
  return imag <= Real(kRealStateTolerance) * scale;
}

template <class Real>
StateVector<Real> conjugated(StateVector<Real> x) {
  for (auto& v : x) v = std::conj(v);
  return x;
}

}  // namespace

template <std::floating_point Real>
void validate_schedule(std::span<const std::complex<Real>> coefficients, double tolerance) {
  if (coefficients.empty()) throw ValidationError("composition schedule is empty");
  std::complex<Real> sum{};
  for (const auto& g : coefficients) {
    if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
      throw ValidationError("composition schedule has a non-finite coefficient");
    sum += g;
  }
  const double residual = static_cast<double>(std::abs(sum - Real(1)));
  if (!(residual <= tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "composition coefficients must sum to 1; residual |sum - 1| = " << residual;
    throw ValidationError(msg.str());
  }
}

template <std::floating_point Real>
FlowMap<Real> compose_schedule(const FlowMap<Real>& base,
                               std::span<const std::complex<Real>> coefficients,
                               const MethodMeta& meta) {
  validate_schedule(coefficients);
  std::vector<std::complex<Real>> gammas(coefficients.begin(), coefficients.end());
  Real stage = 0;
  for (const auto& g : gammas) stage = std::max(stage, std::abs(std::arg(g)));
  auto evaluator = [base, gammas](const StateVector<Real>& x, std::complex<Real> step) {
    StateVector<Real> y = x;
    for (auto it = gammas.rbegin(); it != gammas.rend(); ++it) y = base(y, *it * step);
    return y;
  };
  return FlowMap<Real>(std::move(evaluator), meta, "compose(" + base.name() + ")",
                       base.stage_argument() + stage);
}

template <std::floating_point Real>
FlowMap<Real> double_jump(const FlowMap<Real>& base) {
  const MethodMeta& m = base.meta();
  if (m.order < 2 || m.order % 2 != 0) {
    throw DomainError("double_jump: base order must be even, got " + std::to_string(m.order));
  }
  const auto g = gamma_smallest_phase<Real>(m.order);
  const std::complex<Real> coeffs[] = {g, std::conj(g)};
  MethodMeta meta{m.order + 1, m.order + 1, m.pseudo_symplecticity_order, false};
  return compose_schedule(base, std::span<const std::complex<Real>>(coeffs), meta)
      .with_name("double_jump(" + base.name() + ")");
}

MethodMeta projected_double_jump_meta(const MethodMeta& base) {
  const int k = base.order;
  const int q = base.pseudo_symmetry_order;
  const int r = base.pseudo_symplecticity_order;
  if (k % 2 != 0 || q < k + 1) {
    // Outside the hypotheses: no order gain can be claimed.
    return {k, q, r, true};
  }
  const int n = k / 2;
  if (q == 2 * n + 1) return {2 * n + 1, 2 * n + 1, std::min(r, 2 * n + 1), false};
  const int sym = std::min(q, 4 * n + 3);
  return {2 * n + 2, sym, std::min(sym, r), false};
}

template <std::floating_point Real>
FlowMap<Real> real_projection(const FlowMap<Real>& method, const MethodMeta& meta) {
  auto evaluator = [method](const StateVector<Real>& x, std::complex<Real> step) {
    if (step.imag() == Real(0)) {
      if (!is_real_state(x)) {
        throw DomainError("real_projection: state has a nonzero imaginary part at a real step");
      }
      StateVector<Real> xr(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) xr[i] = x[i].real();
      StateVector<Real> y = method(xr, step);
      for (auto& v : y) v = v.real();
      return y;
    }
    StateVector<Real> y = method(x, step);
    const StateVector<Real> mirror = conjugated(method(conjugated(x), std::conj(step)));
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = Real(0.5) * (y[i] + mirror[i]);
    return y;
  };
  return FlowMap<Real>(std::move(evaluator), meta, "Re(" + method.name() + ")",
                       method.stage_argument());
}

template <std::floating_point Real>
FlowMap<Real> real_projection(const FlowMap<Real>& method) {
  return real_projection(method, method.meta());
}

template <std::floating_point Real>
RecursiveFamily<Real> recursive_family(const FlowMap<Real>& base, int levels) {
  if (levels < 1) throw DomainError("recursive_family: levels must be >= 1");
  const MethodMeta& m = base.meta();
  if (m.order < 2 || m.order % 2 != 0 || m.pseudo_symmetry_order < m.order + 2) {
    throw DomainError("recursive_family: base must have even order 2n and pseudo-symmetry "
                      "order >= 2n+2 (got order " + std::to_string(m.order) + ", q=" +
                      order_to_string(m.pseudo_symmetry_order) + ")");
  }

  RecursiveFamily<Real> family{base, {}, m.order, {}, {}};
  FlowMap<Real> previous = base;
  MethodMeta previous_meta = m;
  std::vector<std::complex<Real>> products{std::complex<Real>(1)};

  for (int i = 1; i <= levels; ++i) {
    const int k = m.order + 2 * (i - 1);
    const auto g = gamma_smallest_phase<Real>(k);
    const std::complex<Real> coeffs[] = {g, std::conj(g)};

    MethodMeta meta = projected_double_jump_meta(previous_meta);
    if (meta.order < m.order + 2 * i) {
      meta.order_capped = true;
      family.warnings.push_back("level " + std::to_string(i) + ": order capped at " +
                                std::to_string(meta.order) + " by pseudo-symmetry order " +
                                order_to_string(previous_meta.pseudo_symmetry_order));
    }
    const int jump_order = previous_meta.order % 2 == 0 ? previous_meta.order + 1 : previous_meta.order;
    const MethodMeta jump_meta{jump_order, jump_order,
                               std::max(jump_order, previous_meta.pseudo_symplecticity_order), false};

    const FlowMap<Real> jump =
        compose_schedule(previous, std::span<const std::complex<Real>>(coeffs), jump_meta);
    FlowMap<Real> level =
        real_projection(jump, meta).with_name("R" + std::to_string(i) + "(" + base.name() + ")");

    std::vector<std::complex<Real>> next;
    next.reserve(products.size() * 2);
    for (const auto& p : products) {
      next.push_back(g * p);
      next.push_back(std::conj(g) * p);
    }
    products = std::move(next);

    family.levels.push_back(level);
    family.coefficient_products.push_back(products);
    previous = level;
    previous_meta = meta;
  }
  return family;
}

template <std::floating_point Real>
CoefficientArguments<Real> coefficient_arguments(const RecursiveFamily<Real>& family) {
  Real max_arg = 0;
  for (const auto& level : family.coefficient_products)
    for (const auto& p : level) max_arg = std::max(max_arg, std::abs(std::arg(p)));
  max_arg += family.base.stage_argument();
  return {max_arg, max_arg < std::numbers::pi_v<Real> / 2};
}

#define PSEUDOSYM_INSTANTIATE(Real)                                                           \
  template void validate_schedule<Real>(std::span<const std::complex<Real>>, double);        \
  template FlowMap<Real> compose_schedule<Real>(                                             \
      const FlowMap<Real>&, std::span<const std::complex<Real>>, const MethodMeta&);         \
  template FlowMap<Real> double_jump<Real>(const FlowMap<Real>&);                            \
  template FlowMap<Real> real_projection<Real>(const FlowMap<Real>&);                        \
  template FlowMap<Real> real_projection<Real>(const FlowMap<Real>&, const MethodMeta&);     \
  template RecursiveFamily<Real> recursive_family<Real>(const FlowMap<Real>&, int);          \
  template CoefficientArguments<Real> coefficient_arguments<Real>(const RecursiveFamily<Real>&);

PSEUDOSYM_INSTANTIATE(double)
PSEUDOSYM_INSTANTIATE(long double)
#undef PSEUDOSYM_INSTANTIATE

}  // namespace pseudosym
