#pragma once

#include <string>
#include <vector>

#include "kelly/simulation.hpp"

namespace kelly {

struct VerifyCheck {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  // Informational checks report their residual but never fail the run
  // (e.g. the Beta fit for fractional-Kelly populations, which is expected
  // to diverge).
  bool informational = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass = false;  // over non-informational checks
};

// Re-derives every invariant from the record contents alone: per-round
// balance and conservation (recomputed from beliefs and wealths, not read
// back from the stored orders), the regret bound and wealth identity for
// full-Kelly runs, price bounds, and the Beta posterior fit.
//
// price_perturbation shifts each recorded price before checking; nonzero
// values are a negative control that must make the balance check fail.
VerifyReport verify_record(const SimulationRecord& rec,
                           double price_perturbation = 0.0);

}  // namespace kelly
