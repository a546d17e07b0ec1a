#pragma once

#include <string>

#include "leadel/analytics.hpp"
#include "leadel/engine.hpp"

namespace leadel {

inline constexpr const char* kToolVersion = "0.1.0";

// One persisted experiment: config echo, summary statistics, theory bounds.
// Round-trips unchanged through the JSON form.
struct ExperimentRecord {
  SimConfig config;
  MetricsSummary summary;
  TheoryBounds bounds;
  std::string timestamp;  // ISO-8601 UTC, or "0" for deterministic output
  std::string version = kToolVersion;
};

std::string csv_header();

// Fixed column order: n, alpha, k0, algo, trials, seed, mean_rounds,
// mean_slots, mean_max_awake, p_star_used, j_star, rounds_bound, time_bound,
// nonterminated. All numeric fields are finite.
std::string csv_row(const ExperimentRecord& rec);

// Newline-delimited JSON, one record per line.
std::string json_record(const ExperimentRecord& rec);
ExperimentRecord parse_json_record(const std::string& line);

std::string utc_timestamp();

}  // namespace leadel
