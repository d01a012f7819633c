#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kelly {

// Raw beliefs of exactly 0 or 1 would make an agent stake its entire wealth,
// allowing bankruptcy and unbounded log loss, so all probabilities are
// clamped into [kProbEpsilon, 1 - kProbEpsilon] on construction.
inline constexpr double kProbEpsilon = 1e-9;

// A probability strictly inside (0,1). Holds agent beliefs, market prices,
// and the Bernoulli parameter of the outcome process.
class Probability {
 public:
  explicit Probability(double raw) {
    if (!std::isfinite(raw)) {
      throw std::invalid_argument("Probability: value must be finite");
    }
    value_ = std::clamp(raw, kProbEpsilon, 1.0 - kProbEpsilon);
  }

  double value() const { return value_; }
  double complement() const { return 1.0 - value_; }

  friend bool operator==(Probability a, Probability b) {
    return a.value_ == b.value_;
  }

 private:
  double value_;
};

// Net payoff per unit staked; the market probability implied by odds b is
// 1/(1+b).
class Odds {
 public:
  explicit Odds(double b) : b_(b) {
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw std::invalid_argument("Odds: payoff must be positive and finite");
    }
  }

  double value() const { return b_; }

  Probability to_probability() const { return Probability(1.0 / (1.0 + b_)); }

  static Odds from_probability(Probability p) {
    return Odds(p.complement() / p.value());
  }

 private:
  double b_;
};

}  // namespace kelly
