#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "devrec/event_store.hpp"

namespace devrec {

enum class CountDistribution { uniform, zipf };

// Deterministic: identical config (including seed) yields a bit-identical
// event stream. Draws come from mt19937_64 with explicit modulo mapping, so
// output does not depend on the standard library's distribution objects.
struct SynthConfig {
  std::uint64_t seed = 0;
  int developers = 1;
  int projects = 1;
  double density = 0.1;                      // fraction of active (d, p) pairs
  std::map<EventKind, double> kind_weights;  // empty = uniform over activity kinds
  double watch_rate = 0.1;
  CountDistribution count_dist = CountDistribution::uniform;
  int count_max = 5;       // uniform(1..count_max)
  double zipf_s = 1.5;     // zipf exponent, support 1..count_max

  void validate() const;  // throws std::invalid_argument
};

inline constexpr std::string_view kSynthRngAlgorithm = "mt19937_64";

EventStore generate(const SynthConfig& cfg);

// Sidecar record describing the run (config + RNG algorithm identifier).
std::string synth_sidecar_json(const SynthConfig& cfg);

}  // namespace devrec
