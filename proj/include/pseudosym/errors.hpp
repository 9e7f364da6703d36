#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>

namespace pseudosym {

/// Argument outside the mathematical domain of an operation
/// (inadmissible branch index, odd order where an even one is needed, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed input: inconsistent coefficients, mismatched grids, bad config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A closed-form flow hit a singularity or a branch cut.
///
/// `index` is the offending grid point or component when known, `step` the
/// integration step when the error surfaced inside a time loop.
class SingularityError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  explicit SingularityError(const std::string& what, std::size_t index = npos,
                            std::complex<double> value = {})
      : std::runtime_error(what), index_(index), value_(value) {}

  std::size_t index() const noexcept { return index_; }
  std::complex<double> value() const noexcept { return value_; }
  std::size_t step() const noexcept { return step_; }

  SingularityError at_step(std::size_t step) const {
    SingularityError e(std::string(what()) + " (step " + std::to_string(step) + ")",
                       index_, value_);
    e.step_ = step;
    return e;
  }

 private:
  std::size_t index_;
  std::complex<double> value_;
  std::size_t step_ = npos;
};

}  // namespace pseudosym
