#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leadel/protocol.hpp"

namespace leadel {

struct SimConfig {
  ElectionParams params;
  ProtocolKind protocol = ProtocolKind::Alg1Strong;
  uint64_t trials = 1;
  uint64_t seed = 0;
  uint32_t max_rounds = 1000;
  uint32_t threads = 1;  // 0 = hardware concurrency

  void validate() const;
};

struct RunMetrics {
  uint32_t rounds_used = 0;
  uint64_t total_slots = 0;             // inner + deterministic, all rounds
  std::vector<uint32_t> awake_slots;    // per station
  uint32_t max_awake = 0;
  std::optional<uint32_t> leader;
  bool terminated = false;
  bool all_informed = false;            // every station set leader_known

  bool operator==(const RunMetrics&) const = default;
};

struct Stats {
  double mean = 0, variance = 0, min = 0, max = 0, median = 0, q90 = 0;
  bool operator==(const Stats&) const = default;
};

struct MetricsSummary {
  uint64_t trials = 0;
  uint64_t nonterminated = 0;  // excluded from the stats below
  uint64_t uninformed = 0;     // terminated runs where some station missed it
  Stats rounds, slots, max_awake;
  double mean_awake_per_station = 0;
  // rounds_cdf[k-1] = fraction of *all* trials finishing within k rounds,
  // so the curve tops out below 1 when some runs did not terminate.
  std::vector<double> rounds_cdf;

  bool operator==(const MetricsSummary&) const = default;
};

// Simulates one full election. Deterministic in (config, trial_index).
RunMetrics run_once(const SimConfig& config, uint64_t trial_index);

// Aggregates run_once over all trial indices; result is identical whatever
// the execution order or thread count.
MetricsSummary run_trials(const SimConfig& config);

struct RoundEstimate {
  uint64_t successes = 0;
  uint64_t trials = 0;
  double freq = 0;
  double ci_low = 0, ci_high = 0;  // normal-approximation 99% interval
};

// Simulates round j alone, from fresh states, and reports the election
// frequency. Errors on an empty trial set.
RoundEstimate simulate_round(const ElectionParams& params,
                             ProtocolKind protocol, uint32_t j,
                             uint64_t trials, uint64_t seed);

}  // namespace leadel
