#pragma once

#include <utility>
#include <vector>

#include "kelly/probability.hpp"

namespace kelly {

// Cumulative natural-log losses after `rounds` periods: the market's loss L
// and each agent's loss L_i against the same outcome sequence.
struct LossLedger {
  double market_loss = 0.0;
  std::vector<double> agent_losses;
  int rounds = 0;
};

// Observed and gamma-discounted outcome frequencies, one entry per prefix.
// gamma = 1 makes the two series identical.
struct FrequencySeries {
  std::vector<double> observed;
  std::vector<double> discounted;
  double gamma = 1.0;
};

// Beta(successes+1, failures+1) density evaluated at a belief set and
// normalized to sum 1 over it, plus its deviation from normalized wealths.
struct BetaFit {
  long successes = 0;
  long failures = 0;
  std::vector<double> density_at_beliefs;
  double max_relative_deviation = 0.0;
};

struct RegretReport {
  double market_loss = 0.0;
  double best_bound = 0.0;  // min_i (L_i + ln(1/w_i))
  double slack = 0.0;       // best_bound - market_loss
  int best_agent = -1;
  bool holds = false;  // slack >= -1e-9
};

struct WealthIdentityReport {
  double max_relative_error = 0.0;
  int worst_agent = -1;
  bool holds = false;  // max_relative_error <= 1e-9
};

struct GammaFit {
  double gamma_star = 1.0;
  double rmse_star = 0.0;
  std::vector<std::pair<double, double>> rmse_curve;  // (gamma, rmse)
};

// Sum over rounds of -ln(probability assigned to the realized outcome).
// Zero for empty sequences; throws LengthMismatch on unequal lengths.
double log_loss(const std::vector<Probability>& predictions,
                const std::vector<int>& outcomes);

// Checks the market's worst-case guarantee L <= min_i (L_i + ln(1/w_i)).
// Violations are reported, not thrown.
RegretReport regret_bound_check(const LossLedger& ledger,
                                const std::vector<double>& initial_wealths);

// Checks the per-agent identity final wealth = w_i(0) * exp(L - L_i) that
// ties wealth redistribution to the loss ledger in a full-Kelly market.
WealthIdentityReport wealth_identity_check(
    const std::vector<double>& initial_wealths,
    const std::vector<double>& final_wealths, const LossLedger& ledger);

// Discounted frequency d_n for every prefix n >= 1: geometrically weighted
// count of successes over the geometrically weighted count of rounds.
// Throws EmptySequence on empty input; gamma must lie in (0,1].
FrequencySeries discounted_frequency(const std::vector<int>& outcomes,
                                     double gamma);

// Grid search for the discount factor whose frequency series best explains a
// price path, by RMSE between price_{t+1} and d_t with the first `burn_in`
// pairs dropped (early prices reflect the prior, not the dynamics). Ties go
// to the larger gamma.
GammaFit fit_discount_factor(const std::vector<double>& prices,
                             const std::vector<int>& outcomes,
                             const std::vector<double>& grid, int burn_in = 10);

// Evaluates the Beta(s+1,f+1) posterior density at each belief, normalizes
// over the belief set, and reports the largest relative deviation from the
// normalized wealths. For a full-Kelly market started from equal wealth the
// deviation is zero up to float error, regardless of outcome order.
BetaFit beta_posterior_fit(const std::vector<double>& beliefs,
                           const std::vector<double>& wealths, long successes,
                           long failures);

}  // namespace kelly
