#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "leadel/engine.hpp"

using namespace leadel;

namespace {

// n = 2, strong protocol: per inner slot k both stations wake independently
// with a_k = 2^-k, so "only station i wakes" has probability
// u_k = a_k (1 - a_k) and a round elects iff exactly one station was alone
// in at least one slot:
//   p_j = 2 [ prod_k (1 - u_k)  -  prod_k (1 - 2 u_k) ].
// Completely independent of the analytics module.
double chain_round_success(uint32_t j, double alpha, uint32_t k0) {
  // Slots beyond k ~ 60 contribute factors of exactly 1.0 in double
  // precision, so the product can be truncated there.
  uint64_t len = std::min<uint64_t>(inner_len(j, alpha), 64);
  double one_free = 1.0, both_free = 1.0;
  for (uint64_t i = 0; i < len; ++i) {
    double a = std::ldexp(1.0, -int(k0 + i));
    double u = a * (1.0 - a);
    one_free *= 1.0 - u;
    both_free *= 1.0 - 2.0 * u;
  }
  return 2.0 * (one_free - both_free);
}

// Mean and variance of rounds-to-election under the chain model.
void chain_rounds_moments(double alpha, uint32_t k0, double& mean,
                          double& var) {
  double survive = 1.0, m1 = 0.0, m2 = 0.0;
  for (uint32_t j = 1; j <= 500 && survive > 1e-14; ++j) {
    double p = chain_round_success(j, alpha, k0);
    double mass = survive * p;
    m1 += mass * j;
    m2 += mass * double(j) * double(j);
    survive *= 1.0 - p;
  }
  mean = m1;
  var = m2 - m1 * m1;
}

}  // namespace

TEST_CASE("run_once is a pure function of (config, trial)") {
  SimConfig cfg;
  cfg.params = {16, 1.2, 1};
  cfg.protocol = ProtocolKind::Alg2Weak;
  cfg.seed = 42;
  auto a = run_once(cfg, 7);
  auto b = run_once(cfg, 7);
  CHECK(a == b);
  CHECK(a.terminated);
  REQUIRE(a.leader.has_value());
  CHECK(*a.leader < 16);
  // Awake bookkeeping is consistent with the per-station counts.
  uint32_t mx = 0;
  for (uint32_t w : a.awake_slots) mx = std::max(mx, w);
  CHECK(a.max_awake == mx);
  CHECK(a.total_slots >= a.rounds_used);  // every round has >= 2 slots
}

TEST_CASE("summary is independent of thread count and repeatable") {
  SimConfig cfg;
  cfg.params = {32, 1.3, 1};
  cfg.protocol = ProtocolKind::Alg1Strong;
  cfg.trials = 400;
  cfg.seed = 9;
  cfg.threads = 1;
  auto seq = run_trials(cfg);
  cfg.threads = 4;
  auto par = run_trials(cfg);
  CHECK(seq == par);
  cfg.threads = 1;
  CHECK(run_trials(cfg) == seq);
}

TEST_CASE("n=2 mean rounds matches the chain model within 4 sigma") {
  SimConfig cfg;
  cfg.params = {2, 2.0, 1};
  cfg.trials = 20000;
  cfg.seed = 123;
  cfg.threads = 1;
  for (auto proto : {ProtocolKind::Alg1Strong}) {
    cfg.protocol = proto;
    auto sum = run_trials(cfg);
    CHECK(sum.nonterminated == 0);
    double mean = 0, var = 0;
    chain_rounds_moments(cfg.params.alpha, cfg.params.k0, mean, var);
    double sigma = std::sqrt(var / double(cfg.trials));
    CHECK(std::abs(sum.rounds.mean - mean) < 4.0 * sigma);
  }
}

TEST_CASE("simulate_round frequency brackets the chain value") {
  ElectionParams params{2, 2.0, 1};
  for (uint32_t j : {1u, 2u, 3u}) {
    auto est = simulate_round(params, ProtocolKind::Alg1Strong, j, 20000, 5);
    double p = chain_round_success(j, params.alpha, params.k0);
    CHECK(est.ci_low <= p);
    CHECK(p <= est.ci_high);
  }
}

TEST_CASE("rounds_cdf is a nondecreasing curve ending at the hit rate") {
  SimConfig cfg;
  cfg.params = {8, 1.5, 1};
  cfg.protocol = ProtocolKind::Alg2Weak;
  cfg.trials = 2000;
  cfg.seed = 77;
  cfg.threads = 1;
  auto sum = run_trials(cfg);
  REQUIRE(sum.rounds_cdf.size() == cfg.max_rounds);
  for (size_t i = 1; i < sum.rounds_cdf.size(); ++i)
    CHECK(sum.rounds_cdf[i] >= sum.rounds_cdf[i - 1]);
  double hit = double(cfg.trials - sum.nonterminated) / double(cfg.trials);
  CHECK(sum.rounds_cdf.back() == doctest::Approx(hit).epsilon(1e-12));
}

TEST_CASE("every terminated run informs every station") {
  for (auto proto : {ProtocolKind::Alg1Strong, ProtocolKind::Alg2Weak}) {
    SimConfig cfg;
    cfg.params = {64, 1.1, 1};
    cfg.protocol = proto;
    cfg.trials = 500;
    cfg.seed = 3;
    cfg.threads = 2;
    auto sum = run_trials(cfg);
    CHECK(sum.uninformed == 0);
    CHECK(sum.rounds.min <= sum.rounds.median);
    CHECK(sum.rounds.median <= sum.rounds.q90);
    CHECK(sum.rounds.q90 <= sum.rounds.max);
  }
}

TEST_CASE("invalid configurations are rejected") {
  SimConfig cfg;
  cfg.params = {1, 1.1, 1};
  CHECK_THROWS_AS(run_trials(cfg), std::domain_error);
  cfg.params = {4, 1.1, 1};
  cfg.trials = 0;
  CHECK_THROWS_AS(run_trials(cfg), std::domain_error);
  CHECK_THROWS_AS(
      simulate_round(ElectionParams{4, 1.1, 1}, ProtocolKind::Alg1Strong, 0,
                     100, 1),
      std::domain_error);
  CHECK_THROWS_AS(
      simulate_round(ElectionParams{4, 1.1, 1}, ProtocolKind::Alg1Strong, 1,
                     0, 1),
      std::domain_error);
}
