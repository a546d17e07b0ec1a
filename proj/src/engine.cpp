#include "leadel/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "leadel/rng.hpp"

namespace leadel {

namespace {

// A round whose probabilistic phase would exceed this is cut off and the
// trial reported as non-terminated; with max_rounds in the hundreds this is
// unreachable in practice (termination odds are overwhelming long before).
constexpr uint64_t kSlotBudget = uint64_t(1) << 31;

struct Scratch {
  std::vector<StationState> states;
  std::vector<SlotAction> actions;
  SlotOutcome outcome;
};

// Plays one full round j on the given states. Returns the index of the
// elected station, if any, and accumulates awake counts.
std::optional<uint32_t> play_round(const ElectionParams& params,
                                   ProtocolKind protocol, uint32_t j,
                                   uint64_t seed, uint64_t trial,
                                   Scratch& s, uint64_t& slots,
                                   std::vector<uint32_t>* awake) {
  const uint64_t n = params.n;
  const uint64_t len = inner_len(j, params.alpha);
  const uint32_t dets = deterministic_slots(protocol);
  const ModelKind model = model_of(protocol);

  for (auto& st : s.states) reset_round(st);
  s.actions.resize(n);

  for (uint64_t slot = 0; slot < len + dets; ++slot) {
    Phase phase = slot < len
                      ? Phase::inner(params.k0 + uint32_t(slot))
                      : Phase::det(uint32_t(slot - len) + 1);
    const uint64_t key = rng::slot_key(seed, trial, j, slot);
    for (uint64_t i = 0; i < n; ++i) {
      SlotDraws draws;
      if (phase.kind == Phase::Inner) {
        draws.wake = rng::uniform01(key, i, 0);
        if (protocol == ProtocolKind::Alg2Weak &&
            draws.wake < std::ldexp(1.0, -int(phase.index))) {
          draws.role = rng::uniform01(key, i, 1);
        }
      }
      s.actions[i] = station_act(protocol, s.states[i], phase, draws);
    }
    resolve_slot_into(model, s.actions, s.outcome);
    for (uint64_t i = 0; i < n; ++i) {
      if (awake && s.actions[i].awake()) ++(*awake)[i];
      station_update(protocol, s.states[i], phase, s.actions[i],
                     s.outcome.observations[i]);
    }
  }
  slots += len + dets;
  return round_outcome(protocol, s.states).elected;
}

RunMetrics run_once_with(const SimConfig& config, uint64_t trial_index,
                         Scratch& s) {
  const uint64_t n = config.params.n;
  s.states.assign(n, StationState{});

  RunMetrics m;
  m.awake_slots.assign(n, 0);
  for (uint32_t j = 1; j <= config.max_rounds; ++j) {
    if (inner_len(j, config.params.alpha) > kSlotBudget) break;
    auto elected = play_round(config.params, config.protocol, j, config.seed,
                              trial_index, s, m.total_slots, &m.awake_slots);
    if (elected) {
      m.rounds_used = j;
      m.leader = elected;
      m.terminated = true;
      break;
    }
  }
  if (!m.terminated) m.rounds_used = config.max_rounds;
  m.max_awake = *std::max_element(m.awake_slots.begin(), m.awake_slots.end());
  m.all_informed = std::all_of(s.states.begin(), s.states.end(),
                               [](const StationState& st) {
                                 return st.leader_known;
                               });
  return m;
}

Stats stats_of(std::vector<double> values) {
  Stats st;
  if (values.empty()) return st;
  double sum = 0;
  for (double v : values) sum += v;
  st.mean = sum / double(values.size());
  double ss = 0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  st.variance = values.size() > 1 ? ss / double(values.size() - 1) : 0.0;
  std::sort(values.begin(), values.end());
  st.min = values.front();
  st.max = values.back();
  auto quantile = [&](double q) {
    size_t idx = size_t(q * double(values.size() - 1) + 0.5);
    return values[std::min(idx, values.size() - 1)];
  };
  st.median = quantile(0.5);
  st.q90 = quantile(0.9);
  return st;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  if (trials < 1) throw std::domain_error("trials must be >= 1");
  if (max_rounds < 1) throw std::domain_error("max_rounds must be >= 1");
}

RunMetrics run_once(const SimConfig& config, uint64_t trial_index) {
  config.validate();
  Scratch s;
  return run_once_with(config, trial_index, s);
}

MetricsSummary run_trials(const SimConfig& config) {
  config.validate();
  const uint64_t trials = config.trials;

  struct TrialRow {
    uint32_t rounds = 0;
    uint64_t slots = 0;
    uint32_t max_awake = 0;
    double mean_awake = 0;
    bool terminated = false;
    bool informed = false;
  };
  std::vector<TrialRow> rows(trials);

  uint32_t nthreads = config.threads != 0
                          ? config.threads
                          : std::max(1u, std::thread::hardware_concurrency());
  nthreads = uint32_t(std::min<uint64_t>(nthreads, trials));

  auto worker = [&](uint32_t, std::atomic<uint64_t>& next) {
    Scratch s;
    for (;;) {
      uint64_t t = next.fetch_add(1);
      if (t >= trials) break;
      RunMetrics m = run_once_with(config, t, s);
      double awake_sum = 0;
      for (uint32_t a : m.awake_slots) awake_sum += a;
      rows[t] = {m.rounds_used, m.total_slots, m.max_awake,
                 awake_sum / double(config.params.n), m.terminated,
                 m.all_informed};
    }
  };

  std::atomic<uint64_t> next{0};
  if (nthreads <= 1) {
    worker(0, next);
  } else {
    std::vector<std::thread> pool;
    for (uint32_t t = 0; t < nthreads; ++t)
      pool.emplace_back(worker, t, std::ref(next));
    for (auto& th : pool) th.join();
  }

  // Aggregation is sequential and in trial order, so the summary does not
  // depend on how the work was scheduled.
  MetricsSummary sum;
  sum.trials = trials;
  std::vector<double> rounds, slots, max_awake;
  std::vector<uint64_t> hist(config.max_rounds, 0);
  double awake_acc = 0;
  for (const TrialRow& r : rows) {
    if (!r.terminated) {
      ++sum.nonterminated;
      continue;
    }
    if (!r.informed) ++sum.uninformed;
    rounds.push_back(double(r.rounds));
    slots.push_back(double(r.slots));
    max_awake.push_back(double(r.max_awake));
    awake_acc += r.mean_awake;
    ++hist[r.rounds - 1];
  }
  sum.rounds = stats_of(rounds);
  sum.slots = stats_of(slots);
  sum.max_awake = stats_of(max_awake);
  uint64_t terminated = trials - sum.nonterminated;
  sum.mean_awake_per_station =
      terminated ? awake_acc / double(terminated) : 0.0;
  sum.rounds_cdf.resize(config.max_rounds);
  uint64_t acc = 0;
  for (uint32_t k = 0; k < config.max_rounds; ++k) {
    acc += hist[k];
    sum.rounds_cdf[k] = double(acc) / double(trials);
  }
  return sum;
}

RoundEstimate simulate_round(const ElectionParams& params,
                             ProtocolKind protocol, uint32_t j,
                             uint64_t trials, uint64_t seed) {
  params.validate();
  if (j < 1) throw std::domain_error("round index must be >= 1");
  if (trials == 0) throw std::domain_error("empty trial set");

  Scratch s;
  uint64_t successes = 0;
  for (uint64_t t = 0; t < trials; ++t) {
    s.states.assign(params.n, StationState{});
    uint64_t slots = 0;
    if (play_round(params, protocol, j, seed, t, s, slots, nullptr))
      ++successes;
  }
  RoundEstimate est;
  est.successes = successes;
  est.trials = trials;
  est.freq = double(successes) / double(trials);
  constexpr double z99 = 2.5758293035489;
  double half = z99 * std::sqrt(std::max(est.freq * (1 - est.freq), 1e-12) /
                                double(trials));
  est.ci_low = std::max(0.0, est.freq - half);
  est.ci_high = std::min(1.0, est.freq + half);
  return est;
}

}  // namespace leadel
