#pragma once

#include <cstdint>

namespace kelly {

// Generator id pinned into every SimulationRecord. Draw k of stream s under
// seed x is  mix64(stream_base(x, s) + (k+1) * kGolden)  mapped to [0,1)
// with the top 53 bits, so any implementation of the same construction
// reproduces a record exactly.
inline constexpr char kRngAlgorithm[] = "splitmix64-streams/v1";

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// SplitMix64 finalizer (the mix used by SplittableRandom).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Labeled substreams keep draw sequences independent of one another:
// extending a run never shifts belief initialization and vice versa.
enum class RngStream : std::uint64_t {
  outcomes = 0,  // exactly one deviate per round, in round order
  beliefs = 1,   // one deviate per agent, in id order
};

class RngSequence {
 public:
  RngSequence(std::uint64_t seed, RngStream stream)
      : state_(mix64(seed ^
                     mix64((static_cast<std::uint64_t>(stream) + 1) *
                           kGolden))) {}

  // Uniform deviate in [0,1) with 53 random bits.
  double next_uniform() {
    state_ += kGolden;
    return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

}  // namespace kelly
