#pragma once

#include <complex>
#include <concepts>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "pseudosym/method_meta.hpp"

namespace pseudosym {

template <std::floating_point Real>
using Complex = std::complex<Real>;

template <std::floating_point Real>
using StateVector = std::vector<std::complex<Real>>;

/// An integrator psi: (state, complex step) -> state.
///
/// Evaluators are immutable after construction and may be called from
/// several threads at once. Every evaluator must be the identity at step 0.
template <std::floating_point Real>
class FlowMap {
 public:
  using Scalar = std::complex<Real>;
  using Vector = StateVector<Real>;
  using Evaluator = std::function<Vector(const Vector&, Scalar)>;

  FlowMap(Evaluator evaluator, MethodMeta meta, std::string name = "flow",
          Real stage_argument = 0)
      : evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
        meta_(meta),
        name_(std::move(name)),
        stage_argument_(stage_argument) {}

  Vector operator()(const Vector& x, Scalar step) const { return (*evaluator_)(x, step); }

  const MethodMeta& meta() const { return meta_; }
  const std::string& name() const { return name_; }

  // Largest |arg| among the complex sub-step fractions the map applies to
  // its elementary flows (0 for real-coefficient splittings).
  Real stage_argument() const { return stage_argument_; }

  FlowMap with_meta(MethodMeta meta) const {
    FlowMap copy = *this;
    copy.meta_ = meta;
    return copy;
  }

  FlowMap with_name(std::string name) const {
    FlowMap copy = *this;
    copy.name_ = std::move(name);
    return copy;
  }

  static FlowMap identity() {
    return FlowMap([](const Vector& x, Scalar) { return x; }, MethodMeta::symmetric(kUnbounded),
                   "identity");
  }

 private:
  std::shared_ptr<const Evaluator> evaluator_;
  MethodMeta meta_;
  std::string name_;
  Real stage_argument_;
};

}  // namespace pseudosym
