#include "kelly/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "kelly/rng.hpp"

namespace kelly {

void SimulationConfig::validate() const {
  if (n_agents < 1) {
    throw std::invalid_argument("config: n_agents must be >= 1");
  }
  if (horizon < 0) {
    throw std::invalid_argument("config: horizon must be >= 0");
  }
  if (!(true_prob >= 0.0 && true_prob <= 1.0)) {
    throw std::invalid_argument("config: true_prob must be in [0,1]");
  }
  if (!lambda_per_agent.empty() &&
      lambda_per_agent.size() != static_cast<std::size_t>(n_agents)) {
    throw std::invalid_argument(
        "config: lambda_per_agent must have one entry per agent");
  }
  const auto check_lambda = [this](double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw std::invalid_argument("config: lambda must be in [0,1]");
    }
    if (learners_enabled && !(lambda > 0.0 && lambda < 1.0)) {
      throw std::invalid_argument(
          "config: learners need initial lambda strictly inside (0,1)");
    }
  };
  if (lambda_per_agent.empty()) {
    check_lambda(lambda_init);
  } else {
    for (double lambda : lambda_per_agent) check_lambda(lambda);
  }
  if (!(output_gamma > 0.0 && output_gamma <= 1.0)) {
    throw std::invalid_argument("config: output_gamma must be in (0,1]");
  }
}

Population initial_population(const SimulationConfig& cfg) {
  cfg.validate();
  Population pop;
  pop.agents.reserve(cfg.n_agents);
  RngSequence belief_rng(cfg.seed, RngStream::beliefs);
  const double n = static_cast<double>(cfg.n_agents);
  for (int i = 0; i < cfg.n_agents; ++i) {
    const double raw_belief = cfg.belief_init == BeliefInit::uniform_random
                                  ? belief_rng.next_uniform()
                                  : static_cast<double>(i + 1) / (n + 1.0);
    const double lambda = cfg.lambda_per_agent.empty()
                              ? cfg.lambda_init
                              : cfg.lambda_per_agent[i];
    AgentState agent{i, Probability(raw_belief), 1.0 / n, lambda,
                     std::nullopt};
    if (cfg.learners_enabled) {
      agent.learner = LambdaLearnerState{lambda, 1.0 - lambda, 0.0};
    }
    pop.agents.push_back(std::move(agent));
  }
  return pop;
}

SimulationRecord run(const SimulationConfig& cfg) {
  Population pop = initial_population(cfg);

  SimulationRecord rec;
  rec.config = cfg;
  rec.rng_algorithm = kRngAlgorithm;
  rec.initial_agents = pop.agents;
  rec.rounds.reserve(cfg.horizon);
  rec.ledger.agent_losses.assign(pop.agents.size(), 0.0);

  RngSequence outcome_rng(cfg.seed, RngStream::outcomes);
  for (int t = 0; t < cfg.horizon; ++t) {
    const Probability price = clearing_price(pop);

    std::vector<Order> orders;
    orders.reserve(pop.agents.size());
    for (const auto& agent : pop.agents) {
      orders.push_back(demand_shares(agent, price));
    }

    const bool outcome = outcome_rng.next_uniform() < cfg.true_prob;

    Population settled = settle(pop, price, outcome);

    rec.ledger.market_loss -=
        std::log(outcome ? price.value() : price.complement());
    for (std::size_t i = 0; i < pop.agents.size(); ++i) {
      const Probability belief = pop.agents[i].belief;
      rec.ledger.agent_losses[i] -=
          std::log(outcome ? belief.value() : belief.complement());
    }
    rec.ledger.rounds = t + 1;

    // Learner updates are synchronous after settlement; the new lambdas
    // take effect from the next round's clearing onward.
    if (cfg.learners_enabled) {
      for (auto& agent : settled.agents) {
        agent.learner = update(*agent.learner, agent.belief, price, outcome);
      }
    }

    settled.renormalize();

    MarketRound round{price, std::move(orders), outcome ? 1 : 0, {}};
    round.wealth_after.reserve(settled.agents.size());
    for (const auto& agent : settled.agents) {
      round.wealth_after.push_back(agent.wealth);
    }
    rec.rounds.push_back(std::move(round));

    pop = std::move(settled);
  }
  rec.final_population = std::move(pop);
  return rec;
}

std::vector<BatchEntry> run_batch(const std::vector<SimulationConfig>& configs) {
  if (configs.empty()) {
    throw std::invalid_argument("run_batch: empty batch");
  }
  const auto run_one = [](const SimulationConfig& cfg) {
    BatchEntry entry;
    try {
      entry.record = run(cfg);
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    return entry;
  };

  std::vector<BatchEntry> entries(configs.size());
  if (configs.size() == 1) {
    entries[0] = run_one(configs[0]);
    return entries;
  }
  const std::size_t workers =
      std::min<std::size_t>(configs.size(),
                            std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < configs.size();
           i = next.fetch_add(1)) {
        entries[i] = run_one(configs[i]);
      }
    });
  }
  for (auto& thread : pool) thread.join();
  return entries;
}

std::vector<BatchEntry> run_batch(const SimulationConfig& base,
                                  std::uint64_t seed_lo,
                                  std::uint64_t seed_hi) {
  if (seed_hi < seed_lo) {
    throw std::invalid_argument("run_batch: seed range is empty");
  }
  std::vector<SimulationConfig> configs;
  configs.reserve(seed_hi - seed_lo + 1);
  for (std::uint64_t seed = seed_lo;; ++seed) {
    SimulationConfig cfg = base;
    cfg.seed = seed;
    configs.push_back(cfg);
    if (seed == seed_hi) break;
  }
  return run_batch(configs);
}

}  // namespace kelly
