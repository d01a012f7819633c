#pragma once

#include <stdexcept>

namespace kelly {

// No agent carries any confidence-weighted wealth (sum of lambda_i * w_i is
// zero), so no clearing price exists.
struct AllZeroConfidence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The price handed to settle() does not clear the population.
struct PriceMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Paired sequences of different lengths.
struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct EmptySequence : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A position whose post-outcome wealth would be zero or negative.
struct Insolvent : std::domain_error {
  using std::domain_error::domain_error;
};

}  // namespace kelly
