#pragma once

#include <stdexcept>
#include <string>

namespace omq {

/// Evaluation of a rational function at a root of its denominator.
class PoleError : public std::runtime_error {
  public:
    explicit PoleError(const std::string& point)
        : std::runtime_error("pole at q = " + point), point_(point) {}
    const std::string& point() const { return point_; }

  private:
    std::string point_;
};

/// Limit at infinity requested with a shift below the valuation.
class DivergenceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A product wrote one of the two forbidden unit combinations.
class UnitContractError : public std::logic_error {
    using std::logic_error::logic_error;
};

/// Two internal computation routes disagreed; indicates a bug.
class InternalConsistencyError : public std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace omq
