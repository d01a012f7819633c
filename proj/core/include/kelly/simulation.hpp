#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kelly/market.hpp"
#include "kelly/metrics.hpp"

namespace kelly {

enum class BeliefInit {
  uniform_random,  // beliefs drawn uniformly on (0,1) from the belief stream
  uniform_grid,    // belief i placed at i/(n+1), i = 1..n; consumes no RNG
};

// A reproducible experiment: identical configs produce identical records.
struct SimulationConfig {
  int n_agents = 100;
  int horizon = 150;
  double true_prob = 0.5;  // Bernoulli success probability of each round
  std::uint64_t seed = 0;
  BeliefInit belief_init = BeliefInit::uniform_random;
  double lambda_init = 1.0;
  std::vector<double> lambda_per_agent;  // overrides lambda_init if nonempty
  bool learners_enabled = false;
  double output_gamma = 0.96;  // discount for the rounds.csv discounted column

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct SimulationRecord {
  SimulationConfig config;
  std::string rng_algorithm;  // pinned generator id, see kelly/rng.hpp
  std::vector<AgentState> initial_agents;
  std::vector<MarketRound> rounds;
  Population final_population;
  LossLedger ledger;
};

// Equal wealth 1/n, beliefs per the init scheme, lambdas per config. With
// learners enabled each agent starts with weights (lambda, 1 - lambda).
Population initial_population(const SimulationConfig& cfg);

// Runs horizon rounds: clear, record the price, draw the outcome (success
// iff the next outcome-stream deviate is below true_prob), settle, apply
// lambda-learner updates, renormalize. Deterministic in the seed.
SimulationRecord run(const SimulationConfig& cfg);

struct BatchEntry {
  std::optional<SimulationRecord> record;  // empty when the run failed
  std::string error;                       // failure reason, else empty
};

// Runs each config independently (in parallel when the batch is large);
// per-run failures are captured in the entry, never abort the batch.
std::vector<BatchEntry> run_batch(const std::vector<SimulationConfig>& configs);

// Convenience: the same config swept over seeds seed_lo..seed_hi inclusive.
std::vector<BatchEntry> run_batch(const SimulationConfig& base,
                                  std::uint64_t seed_lo,
                                  std::uint64_t seed_hi);

}  // namespace kelly
