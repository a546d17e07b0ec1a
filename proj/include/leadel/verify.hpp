#pragma once

#include <string>
#include <vector>

#include "leadel/analytics.hpp"
#include "leadel/engine.hpp"

namespace leadel {

struct CheckResult {
  std::string group;   // e.g. "oracle", "constants", "dominance"
  std::string name;
  bool passed = false;
  double value = 0;    // worst observed value
  double bound = 0;    // the limit it was held against
  std::string detail;
};

struct VerifyOptions {
  uint64_t seed = 20240815;
  // Empty runs everything; otherwise only the named groups. Valid groups:
  // oracle, montecarlo, constants, amplitudes, tuning, mellin, correctness,
  // theorems, dominance, determinism.
  std::vector<std::string> only;
  bool progress = false;  // print a line per criterion as it finishes
};

// Runs the verification suite: exact-oracle equivalence, Monte-Carlo
// consistency, the paper's numeric constants, fluctuation amplitudes, tuning
// constants, Mellin residuals, protocol correctness at scale, theorem-scale
// bounds, stochastic dominance, and determinism.
std::vector<CheckResult> run_acceptance(const VerifyOptions& options = {});

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results)
    if (!r.passed) return false;
  return true;
}

// Exhaustive weighted enumeration of every wake/role pattern of one round:
// 2^(nL) patterns for the strong protocol, 3^(nL) for the weak one. Returns
// the probability that exactly one inner slot shows the success
// configuration (unique transmitter, resp. unique initiator-witness pair).
// Independent of the closed forms it is used to check; practical only for
// tiny n and L.
double enumerate_round_success(const ElectionParams& params,
                               ProtocolKind protocol, uint32_t j);

}  // namespace leadel
