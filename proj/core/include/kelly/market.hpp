#pragma once

#include <vector>

#include "kelly/population.hpp"

namespace kelly {

// Aggregate share demand at a clearing price must vanish to within this
// fraction of the amount of wealth (or gross share volume) in the market.
inline constexpr double kBalanceTolerance = 1e-9;

// One agent's position for a round. Positive shares back the outcome at
// price p_m; negative shares bet against it at price 1 - p_m. The stake is
// the dollars actually at risk and never exceeds the agent's wealth.
struct Order {
  int agent_id = 0;
  double shares = 0.0;
  double stake = 0.0;
};

// Full record of one market period.
struct MarketRound {
  Probability price;
  std::vector<Order> orders;
  int outcome = 0;
  std::vector<double> wealth_after;
};

// Signed optimal bet fraction at price p_m for belief p:
// (p - p_m)/(1 - p_m) on the back side, -(p_m - p)/p_m on the lay side,
// 0 when p equals p_m. Magnitude never exceeds 1.
double kelly_fraction(Probability p, Probability p_m);

// Confidence-weighted belief lambda*p + (1-lambda)*p_m. A fractional-Kelly
// bettor acts exactly like a full-Kelly bettor holding this belief.
Probability effective_belief(Probability p, Probability p_m, double lambda);

// Log-optimal share demand for one agent taking price p_m.
Order demand_shares(const AgentState& agent, Probability p_m);

// Net share demand summed over the population at price p_m.
double aggregate_demand(const Population& pop, Probability p_m);

// The competitive-equilibrium price: the confidence-and-wealth-weighted
// average of beliefs, at which aggregate demand nets to zero. Throws
// AllZeroConfidence when sum_i lambda_i * w_i is zero.
Probability clearing_price(const Population& pop);

// Pays out all positions at price p_m for the realized outcome and returns
// the post-settlement population. Total wealth is conserved; for an
// all-full-Kelly population the new wealths are exactly the Bayes posterior
// with prior w_i and likelihood p_i. Throws PriceMismatch when p_m does not
// clear the population.
Population settle(const Population& pop, Probability p_m, bool outcome);

// Expected log wealth of holding `shares` at price p_m under belief p.
// Throws Insolvent if either post-outcome wealth would be <= 0. Serves as
// the optimality oracle for demand_shares.
double expected_log_utility(double shares, double wealth, Probability p,
                            Probability p_m);

}  // namespace kelly
