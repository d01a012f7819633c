#pragma once

#include <cmath>
#include <stdexcept>

#include "kelly/probability.hpp"

namespace kelly {

// Two-expert multiplicative-weights state for learning the Kelly fraction
// online. The experts are the agent's own fixed belief and the market price;
// each weight is multiplied by the likelihood its expert assigned to the
// realized outcome, so the weights follow the same dynamic that redistributes
// wealth in the market itself. The fraction in force is
// weight_self / (weight_self + weight_market).
struct LambdaLearnerState {
  double weight_self = 0.5;
  double weight_market = 0.5;
  // ln of the factor divided out by joint rescaling; see total_log_weight().
  double log_rescale = 0.0;
};

inline double current_lambda(const LambdaLearnerState& s) {
  if (!(s.weight_self > 0.0) || !(s.weight_market > 0.0)) {
    throw std::invalid_argument("LambdaLearnerState: weights must be positive");
  }
  return s.weight_self / (s.weight_self + s.weight_market);
}

// ln(weight_self + weight_market) with rescaling undone; drives the
// two-expert regret bound  -total_log_weight <= min(L_self, L_market) + ln 2.
inline double total_log_weight(const LambdaLearnerState& s) {
  return std::log(s.weight_self + s.weight_market) + s.log_rescale;
}

// One multiplicative step. Each weight picks up the probability its expert
// assigned to the realized outcome. When both weights get small they are
// jointly rescaled by a power of two, which leaves the fraction bit-exact.
inline LambdaLearnerState update(const LambdaLearnerState& s,
                                 Probability p_self, Probability p_market,
                                 bool outcome) {
  LambdaLearnerState out = s;
  out.weight_self *= outcome ? p_self.value() : p_self.complement();
  out.weight_market *= outcome ? p_market.value() : p_market.complement();
  if (out.weight_self + out.weight_market < 0x1.0p-512) {
    out.weight_self = std::ldexp(out.weight_self, 512);
    out.weight_market = std::ldexp(out.weight_market, 512);
    out.log_rescale -= 512.0 * M_LN2;
  }
  return out;
}

}  // namespace kelly
