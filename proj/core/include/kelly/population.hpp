#pragma once

#include <optional>
#include <vector>

#include "kelly/learner.hpp"
#include "kelly/probability.hpp"

namespace kelly {

// Wealths are normalized shares of the total; the population must sum to 1
// within this absolute tolerance.
inline constexpr double kWealthSumTolerance = 1e-9;

// One market participant. Zero-wealth agents stay in the population (they
// place zero orders and cannot re-enter); this keeps agent indexing stable.
struct AgentState {
  int id = 0;
  Probability belief;
  double wealth = 0.0;
  double lambda = 1.0;  // Kelly fraction in [0,1]; 1 = full Kelly
  std::optional<LambdaLearnerState> learner;

  // Fraction currently in force: a learner overrides the fixed value.
  double effective_lambda() const {
    return learner ? current_lambda(*learner) : lambda;
  }
};

struct Population {
  std::vector<AgentState> agents;

  double total_wealth() const;

  // Scales wealths to sum to exactly 1, correcting per-round float drift.
  void renormalize();

  // Throws std::invalid_argument if empty, any wealth is negative, any
  // lambda is outside [0,1], or wealths do not sum to 1 within tolerance.
  void validate() const;
};

}  // namespace kelly
