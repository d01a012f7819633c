#include "kelly/market.hpp"

#include <cmath>
#include <stdexcept>

#include "kelly/errors.hpp"

namespace kelly {

double Population::total_wealth() const {
  double sum = 0.0;
  for (const auto& a : agents) sum += a.wealth;
  return sum;
}

void Population::renormalize() {
  const double sum = total_wealth();
  if (sum <= 0.0) return;
  for (auto& a : agents) a.wealth /= sum;
}

void Population::validate() const {
  if (agents.empty()) {
    throw std::invalid_argument("Population: must be nonempty");
  }
  for (const auto& a : agents) {
    if (!(a.wealth >= 0.0) || !std::isfinite(a.wealth)) {
      throw std::invalid_argument("Population: wealth must be >= 0");
    }
    if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) {
      throw std::invalid_argument("Population: lambda must be in [0,1]");
    }
  }
  if (std::abs(total_wealth() - 1.0) > kWealthSumTolerance) {
    throw std::invalid_argument("Population: wealths must sum to 1");
  }
}

double kelly_fraction(Probability p, Probability p_m) {
  if (p.value() > p_m.value()) {
    return (p.value() - p_m.value()) / p_m.complement();
  }
  if (p.value() < p_m.value()) {
    return -(p_m.value() - p.value()) / p_m.value();
  }
  return 0.0;
}

Probability effective_belief(Probability p, Probability p_m, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("effective_belief: lambda must be in [0,1]");
  }
  if (lambda == 1.0) return p;
  if (lambda == 0.0) return p_m;
  return Probability(lambda * p.value() + (1.0 - lambda) * p_m.value());
}

Order demand_shares(const AgentState& agent, Probability p_m) {
  const Probability p_eff =
      effective_belief(agent.belief, p_m, agent.effective_lambda());
  const double f = kelly_fraction(p_eff, p_m);
  const double stake = std::abs(f) * agent.wealth;
  const double shares =
      f >= 0.0 ? stake / p_m.value() : -stake / p_m.complement();
  return Order{agent.id, shares, stake};
}

double aggregate_demand(const Population& pop, Probability p_m) {
  double net = 0.0;
  for (const auto& a : pop.agents) net += demand_shares(a, p_m).shares;
  return net;
}

Probability clearing_price(const Population& pop) {
  double num = 0.0;
  double den = 0.0;
  for (const auto& a : pop.agents) {
    const double conf = a.effective_lambda() * a.wealth;
    num += conf * a.belief.value();
    den += conf;
  }
  if (!(den > 0.0)) {
    throw AllZeroConfidence(
        "clearing_price: every agent defers to the market or is broke");
  }
  return Probability(num / den);
}

Population settle(const Population& pop, Probability p_m, bool outcome) {
  // Balance is judged relative to gross share volume as well as wealth so
  // the check stays meaningful when prices sit near the clamp boundary and
  // share counts dwarf wealth.
  double net = 0.0;
  double gross = 0.0;
  for (const auto& a : pop.agents) {
    const double q = demand_shares(a, p_m).shares;
    net += q;
    gross += std::abs(q);
  }
  if (std::abs(net) > kBalanceTolerance * std::max(pop.total_wealth(), gross)) {
    throw PriceMismatch("settle: price does not clear the population");
  }

  Population out = pop;
  for (auto& a : out.agents) {
    const Probability p_eff =
        effective_belief(a.belief, p_m, a.effective_lambda());
    const double ratio = outcome ? p_eff.value() / p_m.value()
                                 : p_eff.complement() / p_m.complement();
    a.wealth *= ratio;
  }
  return out;
}

double expected_log_utility(double shares, double wealth, Probability p,
                            Probability p_m) {
  const double wealth_up = p_m.complement() * shares + wealth;
  const double wealth_down = -p_m.value() * shares + wealth;
  if (!(wealth_up > 0.0) || !(wealth_down > 0.0)) {
    throw Insolvent("expected_log_utility: position risks nonpositive wealth");
  }
  return p.value() * std::log(wealth_up) +
         p.complement() * std::log(wealth_down);
}

}  // namespace kelly
