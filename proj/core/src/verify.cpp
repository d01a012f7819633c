#include "kelly/verify.hpp"

#include <algorithm>
#include <cmath>

namespace kelly {

namespace {

constexpr double kConservationTolerance = 1e-12;
constexpr double kConsistencyTolerance = 1e-9;
constexpr double kPriceBoundsTolerance = 1e-12;
constexpr double kBetaFitTolerance = 1e-6;
constexpr double kRegretSlackTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-9;

bool is_full_kelly(const SimulationRecord& rec) {
  if (rec.config.learners_enabled) return false;
  for (const auto& agent : rec.initial_agents) {
    if (agent.lambda != 1.0) return false;
  }
  return true;
}

}  // namespace

VerifyReport verify_record(const SimulationRecord& rec,
                           double price_perturbation) {
  VerifyReport report;

  Population pop;
  pop.agents = rec.initial_agents;

  double max_balance = 0.0;
  double max_conservation = 0.0;
  double max_consistency = 0.0;
  double max_bounds_excess = 0.0;
  long successes = 0;

  std::vector<Probability> prices;
  std::vector<int> outcomes;
  prices.reserve(rec.rounds.size());
  outcomes.reserve(rec.rounds.size());

  for (const auto& round : rec.rounds) {
    const Probability price =
        Probability(round.price.value() + price_perturbation);
    prices.push_back(price);
    outcomes.push_back(round.outcome);
    successes += round.outcome ? 1 : 0;

    const double wealth_before = pop.total_wealth();
    max_balance = std::max(max_balance,
                           std::abs(aggregate_demand(pop, price)) /
                               std::max(wealth_before, 1e-300));

    double lo = 1.0;
    double hi = 0.0;
    for (auto& agent : pop.agents) {
      const Probability p_eff =
          effective_belief(agent.belief, price, agent.effective_lambda());
      lo = std::min(lo, p_eff.value());
      hi = std::max(hi, p_eff.value());
      const double ratio = round.outcome
                               ? p_eff.value() / price.value()
                               : p_eff.complement() / price.complement();
      agent.wealth *= ratio;
    }
    max_bounds_excess =
        std::max({max_bounds_excess, lo - price.value(), price.value() - hi});
    max_conservation =
        std::max(max_conservation,
                 std::abs(pop.total_wealth() - wealth_before) /
                     std::max(wealth_before, 1e-300));

    if (rec.config.learners_enabled) {
      for (auto& agent : pop.agents) {
        agent.learner = update(*agent.learner, agent.belief, price,
                               round.outcome != 0);
      }
    }
    pop.renormalize();

    for (std::size_t i = 0; i < pop.agents.size(); ++i) {
      max_consistency =
          std::max(max_consistency,
                   std::abs(pop.agents[i].wealth - round.wealth_after[i]));
    }
  }

  report.checks.push_back({"balance", max_balance, kBalanceTolerance,
                           max_balance <= kBalanceTolerance, false});
  report.checks.push_back({"conservation", max_conservation,
                           kConservationTolerance,
                           max_conservation <= kConservationTolerance, false});
  report.checks.push_back({"record_consistency", max_consistency,
                           kConsistencyTolerance,
                           max_consistency <= kConsistencyTolerance, false});
  report.checks.push_back({"price_bounds", max_bounds_excess,
                           kPriceBoundsTolerance,
                           max_bounds_excess <= kPriceBoundsTolerance, false});

  // Ledger recomputed from recorded prices, beliefs, and outcomes.
  double ledger_residual = std::abs(
      log_loss(prices, outcomes) - rec.ledger.market_loss);
  for (std::size_t i = 0; i < rec.initial_agents.size(); ++i) {
    const Probability belief = rec.initial_agents[i].belief;
    double agent_loss = 0.0;
    for (int outcome : outcomes) {
      agent_loss -= std::log(outcome ? belief.value() : belief.complement());
    }
    ledger_residual = std::max(
        ledger_residual, std::abs(agent_loss - rec.ledger.agent_losses[i]));
  }
  report.checks.push_back({"ledger_consistency", ledger_residual,
                           kConsistencyTolerance,
                           ledger_residual <= kConsistencyTolerance, false});

  const bool full_kelly = is_full_kelly(rec);

  std::vector<double> initial_wealths;
  std::vector<double> final_wealths;
  std::vector<double> beliefs;
  for (const auto& agent : rec.initial_agents) {
    initial_wealths.push_back(agent.wealth);
    beliefs.push_back(agent.belief.value());
  }
  for (const auto& agent : rec.final_population.agents) {
    final_wealths.push_back(agent.wealth);
  }

  // The regret bound and wealth identity are theorems only for full-Kelly
  // populations; for fractional runs they are reported as informational.
  const RegretReport regret = regret_bound_check(rec.ledger, initial_wealths);
  report.checks.push_back({"regret_bound", std::max(0.0, -regret.slack),
                           kRegretSlackTolerance, regret.holds, !full_kelly});

  const WealthIdentityReport identity =
      wealth_identity_check(initial_wealths, final_wealths, rec.ledger);
  report.checks.push_back({"wealth_identity", identity.max_relative_error,
                           kIdentityTolerance, identity.holds, !full_kelly});

  const long failures = static_cast<long>(rec.rounds.size()) - successes;
  const BetaFit fit =
      beta_posterior_fit(beliefs, final_wealths, successes, failures);
  report.checks.push_back({"beta_fit", fit.max_relative_deviation,
                           kBetaFitTolerance,
                           fit.max_relative_deviation <= kBetaFitTolerance,
                           !full_kelly});

  report.all_pass = true;
  for (const auto& check : report.checks) {
    if (!check.informational && !check.pass) report.all_pass = false;
  }
  return report;
}

}  // namespace kelly
