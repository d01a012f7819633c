#include "kelly/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kelly/errors.hpp"

namespace kelly {

namespace {

// Denominator floor for relative deviations: wealth below this is numerical
// dust (doomed agents underflow linear-domain wealth long before this).
constexpr double kDeviationFloor = 1e-12;

constexpr double kRegretSlackTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-9;

}  // namespace

double log_loss(const std::vector<Probability>& predictions,
                const std::vector<int>& outcomes) {
  if (predictions.size() != outcomes.size()) {
    throw LengthMismatch("log_loss: predictions and outcomes differ in length");
  }
  double loss = 0.0;
  for (std::size_t t = 0; t < predictions.size(); ++t) {
    loss -= std::log(outcomes[t] ? predictions[t].value()
                                 : predictions[t].complement());
  }
  return loss;
}

RegretReport regret_bound_check(const LossLedger& ledger,
                                const std::vector<double>& initial_wealths) {
  if (ledger.agent_losses.size() != initial_wealths.size()) {
    throw LengthMismatch("regret_bound_check: ledger and wealths differ");
  }
  RegretReport report;
  report.market_loss = ledger.market_loss;
  report.best_bound = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < initial_wealths.size(); ++i) {
    if (!(initial_wealths[i] > 0.0)) continue;  // ln(1/0) bound is vacuous
    const double bound = ledger.agent_losses[i] - std::log(initial_wealths[i]);
    if (bound < report.best_bound) {
      report.best_bound = bound;
      report.best_agent = static_cast<int>(i);
    }
  }
  report.slack = report.best_bound - report.market_loss;
  report.holds = report.slack >= -kRegretSlackTolerance;
  return report;
}

WealthIdentityReport wealth_identity_check(
    const std::vector<double>& initial_wealths,
    const std::vector<double>& final_wealths, const LossLedger& ledger) {
  if (initial_wealths.size() != final_wealths.size() ||
      initial_wealths.size() != ledger.agent_losses.size()) {
    throw LengthMismatch("wealth_identity_check: sequence lengths differ");
  }
  WealthIdentityReport report;
  for (std::size_t i = 0; i < initial_wealths.size(); ++i) {
    const double expected =
        initial_wealths[i] *
        std::exp(ledger.market_loss - ledger.agent_losses[i]);
    const double err = std::abs(final_wealths[i] - expected) /
                       std::max(expected, kDeviationFloor);
    if (err > report.max_relative_error) {
      report.max_relative_error = err;
      report.worst_agent = static_cast<int>(i);
    }
  }
  report.holds = report.max_relative_error <= kIdentityTolerance;
  return report;
}

FrequencySeries discounted_frequency(const std::vector<int>& outcomes,
                                     double gamma) {
  if (outcomes.empty()) {
    throw EmptySequence("discounted_frequency: empty outcome sequence");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("discounted_frequency: gamma must be in (0,1]");
  }
  FrequencySeries series;
  series.gamma = gamma;
  series.observed.reserve(outcomes.size());
  series.discounted.reserve(outcomes.size());
  double successes = 0.0;
  double weighted_successes = 0.0;
  double weighted_rounds = 0.0;
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    successes += outcomes[n] ? 1.0 : 0.0;
    weighted_successes = gamma * weighted_successes + (outcomes[n] ? 1.0 : 0.0);
    weighted_rounds = gamma * weighted_rounds + 1.0;
    series.observed.push_back(successes / static_cast<double>(n + 1));
    series.discounted.push_back(weighted_successes / weighted_rounds);
  }
  return series;
}

GammaFit fit_discount_factor(const std::vector<double>& prices,
                             const std::vector<int>& outcomes,
                             const std::vector<double>& grid, int burn_in) {
  if (prices.size() != outcomes.size()) {
    throw LengthMismatch("fit_discount_factor: prices and outcomes differ");
  }
  if (grid.empty()) {
    throw std::invalid_argument("fit_discount_factor: empty gamma grid");
  }
  if (burn_in < 0) {
    throw std::invalid_argument("fit_discount_factor: negative burn-in");
  }
  const std::size_t rounds = prices.size();
  // Pairs are (price_{t+1}, d_t): the price of round t+1 is set by wealth
  // shifts from the first t outcomes, the same information d_t summarizes.
  if (rounds < static_cast<std::size_t>(burn_in) + 2) {
    throw LengthMismatch("fit_discount_factor: burn-in leaves no fit window");
  }

  std::vector<double> sorted_grid = grid;
  std::sort(sorted_grid.begin(), sorted_grid.end());
  for (double g : sorted_grid) {
    if (!(g > 0.0 && g <= 1.0)) {
      throw std::invalid_argument("fit_discount_factor: gamma outside (0,1]");
    }
  }

  GammaFit fit;
  fit.rmse_star = std::numeric_limits<double>::infinity();
  for (double gamma : sorted_grid) {
    double weighted_successes = 0.0;
    double weighted_rounds = 0.0;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 1; t + 1 <= rounds; ++t) {
      weighted_successes =
          gamma * weighted_successes + (outcomes[t - 1] ? 1.0 : 0.0);
      weighted_rounds = gamma * weighted_rounds + 1.0;
      if (t <= static_cast<std::size_t>(burn_in)) continue;
      const double d_t = weighted_successes / weighted_rounds;
      const double diff = prices[t] - d_t;  // prices[t] is price_{t+1}
      sum_sq += diff * diff;
      ++count;
    }
    const double rmse = std::sqrt(sum_sq / static_cast<double>(count));
    fit.rmse_curve.emplace_back(gamma, rmse);
    if (rmse <= fit.rmse_star) {  // ascending grid, so ties pick larger gamma
      fit.rmse_star = rmse;
      fit.gamma_star = gamma;
    }
  }
  return fit;
}

BetaFit beta_posterior_fit(const std::vector<double>& beliefs,
                           const std::vector<double>& wealths, long successes,
                           long failures) {
  if (beliefs.size() != wealths.size()) {
    throw LengthMismatch("beta_posterior_fit: beliefs and wealths differ");
  }
  if (beliefs.empty()) {
    throw EmptySequence("beta_posterior_fit: no beliefs");
  }
  if (successes < 0 || failures < 0) {
    throw std::invalid_argument("beta_posterior_fit: negative counts");
  }

  BetaFit fit;
  fit.successes = successes;
  fit.failures = failures;

  // Log domain: p^s (1-p)^f underflows linear doubles for long horizons.
  std::vector<double> log_density(beliefs.size());
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    const double p = beliefs[i];
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("beta_posterior_fit: belief outside (0,1)");
    }
    log_density[i] = static_cast<double>(successes) * std::log(p) +
                     static_cast<double>(failures) * std::log1p(-p);
    log_max = std::max(log_max, log_density[i]);
  }
  double norm = 0.0;
  fit.density_at_beliefs.resize(beliefs.size());
  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    fit.density_at_beliefs[i] = std::exp(log_density[i] - log_max);
    norm += fit.density_at_beliefs[i];
  }

  double total_wealth = 0.0;
  for (double w : wealths) total_wealth += w;

  for (std::size_t i = 0; i < beliefs.size(); ++i) {
    fit.density_at_beliefs[i] /= norm;
    const double w = total_wealth > 0.0 ? wealths[i] / total_wealth : 0.0;
    const double deviation = std::abs(w - fit.density_at_beliefs[i]) /
                             std::max(fit.density_at_beliefs[i],
                                      kDeviationFloor);
    fit.max_relative_deviation =
        std::max(fit.max_relative_deviation, deviation);
  }
  return fit;
}

}  // namespace kelly
