#include "leadel/leadel.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "leadel/record.hpp"
#include "leadel/verify.hpp"

using namespace leadel;

namespace {

thread_local std::string g_last_error;

leadel_status translate_config(const leadel_config* in, SimConfig& out) {
  if (!in) {
    g_last_error = "config pointer is null";
    return LEADEL_EINVAL;
  }
  if (in->algo != 1 && in->algo != 2) {
    g_last_error = "algo must be 1 or 2";
    return LEADEL_EINVAL;
  }
  out.params = ElectionParams{in->n, in->alpha, in->k0 == 0 ? 1 : in->k0};
  out.protocol =
      in->algo == 1 ? ProtocolKind::Alg1Strong : ProtocolKind::Alg2Weak;
  out.trials = in->trials == 0 ? 1 : in->trials;
  out.seed = in->seed;
  out.max_rounds = in->max_rounds == 0 ? 1000 : in->max_rounds;
  out.threads = in->threads;
  return LEADEL_OK;
}

void translate_stats(const Stats& s, leadel_stats& out) {
  out = {s.mean, s.variance, s.min, s.max, s.median, s.q90};
}

void translate_summary(const MetricsSummary& s, leadel_summary& out) {
  out.trials = s.trials;
  out.nonterminated = s.nonterminated;
  out.uninformed = s.uninformed;
  translate_stats(s.rounds, out.rounds);
  translate_stats(s.slots, out.slots);
  translate_stats(s.max_awake, out.max_awake);
  out.mean_awake_per_station = s.mean_awake_per_station;
}

void translate_theory(const TheoryBounds& t, leadel_theory& out) {
  out = {t.j_star,       t.p_star,     t.alpha_sup, t.c_value,
         t.rounds_bound, t.time_bound, t.awake_coeff};
}

leadel_status map_exception() {
  try {
    throw;
  } catch (const std::overflow_error& e) {
    g_last_error = e.what();
    return LEADEL_EOVERFLOW;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return LEADEL_EDOMAIN;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return LEADEL_EINVAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LEADEL_EINTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return LEADEL_EINTERNAL;
  }
}

leadel_status copy_out(const std::string& s, char* buf, size_t cap,
                       size_t* needed) {
  if (needed) *needed = s.size();
  if (buf && cap > 0) {
    size_t n = std::min(cap - 1, s.size());
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return LEADEL_OK;
}

// Records must stay finite; past the alpha supremum the cost constant and
// time bound diverge and are stored as zero.
TheoryBounds bounds_or_zero(const SimConfig& cfg) {
  TheoryBounds tb =
      theory_bounds(cfg.params, cfg.protocol, p_star_of(cfg.protocol));
  if (!std::isfinite(tb.c_value)) tb.c_value = 0;
  if (!std::isfinite(tb.time_bound)) tb.time_bound = 0;
  return tb;
}

}  // namespace

struct leadel_run {
  SimConfig config;
  MetricsSummary summary;
  TheoryBounds bounds;
};

extern "C" {

const char* leadel_status_str(leadel_status status) {
  switch (status) {
    case LEADEL_OK: return "ok";
    case LEADEL_EINVAL: return "invalid argument";
    case LEADEL_EDOMAIN: return "parameter outside its domain";
    case LEADEL_EOVERFLOW: return "length or enumeration cap exceeded";
    case LEADEL_EINTERNAL: return "internal invariant violated";
  }
  return "unknown status";
}

const char* leadel_last_error(void) { return g_last_error.c_str(); }

const char* leadel_version(void) { return kToolVersion; }

leadel_status leadel_run_new(const leadel_config* config, leadel_run** out) {
  if (!out) return LEADEL_EINVAL;
  *out = nullptr;
  SimConfig cfg;
  if (auto st = translate_config(config, cfg); st != LEADEL_OK) return st;
  try {
    auto run = std::make_unique<leadel_run>();
    run->config = cfg;
    run->summary = run_trials(cfg);
    run->bounds = bounds_or_zero(cfg);
    *out = run.release();
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

void leadel_run_free(leadel_run* run) { delete run; }

leadel_status leadel_run_summary(const leadel_run* run, leadel_summary* out) {
  if (!run || !out) return LEADEL_EINVAL;
  translate_summary(run->summary, *out);
  return LEADEL_OK;
}

leadel_status leadel_run_rounds_cdf(const leadel_run* run, uint32_t k,
                                    double* out) {
  if (!run || !out) return LEADEL_EINVAL;
  if (k < 1 || k > run->summary.rounds_cdf.size()) return LEADEL_EINVAL;
  *out = run->summary.rounds_cdf[k - 1];
  return LEADEL_OK;
}

leadel_status leadel_run_dominance(const leadel_run* run, double p_star,
                                   double confidence, int* pass,
                                   double* margin, double* band) {
  if (!run || !pass) return LEADEL_EINVAL;
  try {
    uint64_t terminated = run->summary.trials - run->summary.nonterminated;
    if (terminated == 0) return LEADEL_EINVAL;
    std::vector<double> cdf(run->summary.rounds_cdf.size());
    for (size_t i = 0; i < cdf.size(); ++i)
      cdf[i] = run->summary.rounds_cdf[i] *
               double(run->summary.trials) / double(terminated);
    auto res = dominance_check(cdf, run->bounds.j_star, p_star, terminated,
                               confidence);
    *pass = res.pass ? 1 : 0;
    if (margin) *margin = res.margin;
    if (band) *band = res.band;
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_simulate(const leadel_config* config,
                              leadel_summary* out) {
  if (!out) return LEADEL_EINVAL;
  SimConfig cfg;
  if (auto st = translate_config(config, cfg); st != LEADEL_OK) return st;
  try {
    translate_summary(run_trials(cfg), *out);
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_round_prob(const leadel_config* config, uint32_t j,
                                leadel_round_report* out) {
  if (!out) return LEADEL_EINVAL;
  SimConfig cfg;
  if (auto st = translate_config(config, cfg); st != LEADEL_OK) return st;
  try {
    auto exact = exact_round_success(cfg.params, cfg.protocol, j);
    auto est =
        simulate_round(cfg.params, cfg.protocol, j, cfg.trials, cfg.seed);
    *out = {est.successes, est.trials, est.freq,  est.ci_low,
            est.ci_high,   exact.p,    exact.s,   exact.t,
            exact.inner_length};
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_theory_bounds(const leadel_config* config, double p_star,
                                   leadel_theory* out) {
  if (!out) return LEADEL_EINVAL;
  SimConfig cfg;
  if (auto st = translate_config(config, cfg); st != LEADEL_OK) return st;
  try {
    translate_theory(theory_bounds(cfg.params, cfg.protocol, p_star), *out);
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

double leadel_default_p_star(uint32_t algo) {
  return algo == 2 ? kP2Star : kP1Star;
}

leadel_status leadel_cost(double x, double y, double* out) {
  if (!out) return LEADEL_EINVAL;
  try {
    *out = cost_C(x, y);
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_optimal_alpha(double p_star, double tol, double* alpha,
                                   double* c_min) {
  if (!alpha) return LEADEL_EINVAL;
  try {
    auto opt = optimal_alpha(p_star, tol > 0 ? tol : 1e-9);
    *alpha = opt.alpha;
    if (c_min) *c_min = opt.c;
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_mellin(char variant, uint32_t m, double n, uint32_t r,
                            leadel_mellin_report* out) {
  if (!out) return LEADEL_EINVAL;
  MellinVariant v;
  if (variant == 'U' || variant == 'u') v = MellinVariant::U;
  else if (variant == 'V' || variant == 'v') v = MellinVariant::V;
  else return LEADEL_EINVAL;
  try {
    auto rep = mellin_check(v, m, n, r);
    *out = {rep.m,           rep.n,          rep.r,
            rep.direct_sum,  rep.asymptote,  rep.amplitude_bound,
            rep.error_term,  rep.residual,   rep.within_band ? 1 : 0};
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_constants(uint32_t algo, leadel_constants_report* out) {
  if (!out || (algo != 1 && algo != 2)) return LEADEL_EINVAL;
  try {
    auto rep = lemma_constants(algo == 1 ? ProtocolKind::Alg1Strong
                                         : ProtocolKind::Alg2Weak);
    *out = {rep.series_sum,     rep.sup_amplitude, rep.fluctuation_factor,
            rep.s_bound,        rep.t_bound,       rep.p_star_product,
            rep.p_star_paper,   rep.truncation_index};
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_csv_header(char* buf, size_t cap, size_t* needed) {
  return copy_out(csv_header(), buf, cap, needed);
}

leadel_status leadel_run_csv(const leadel_run* run, char* buf, size_t cap,
                             size_t* needed) {
  if (!run) return LEADEL_EINVAL;
  try {
    ExperimentRecord rec{run->config, run->summary, run->bounds, "0"};
    return copy_out(csv_row(rec), buf, cap, needed);
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_run_json(const leadel_run* run, const char* timestamp,
                              char* buf, size_t cap, size_t* needed) {
  if (!run) return LEADEL_EINVAL;
  try {
    ExperimentRecord rec{run->config, run->summary, run->bounds,
                         timestamp && *timestamp ? timestamp : "0"};
    return copy_out(json_record(rec), buf, cap, needed);
  } catch (...) {
    return map_exception();
  }
}

leadel_status leadel_verify(const char* only, uint64_t seed, int progress,
                            leadel_check* out, size_t cap, size_t* count) {
  if (!count) return LEADEL_EINVAL;
  try {
    VerifyOptions opt;
    opt.seed = seed;
    opt.progress = progress != 0;
    if (only && *only) {
      std::string s(only);
      size_t pos = 0;
      while (pos != std::string::npos) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) opt.only.push_back(tok);
        pos = comma == std::string::npos ? comma : comma + 1;
      }
    }
    auto results = run_acceptance(opt);
    *count = results.size();
    if (out) {
      for (size_t i = 0; i < std::min(cap, results.size()); ++i) {
        const auto& r = results[i];
        leadel_check& c = out[i];
        std::snprintf(c.group, sizeof(c.group), "%s", r.group.c_str());
        std::snprintf(c.name, sizeof(c.name), "%s", r.name.c_str());
        c.passed = r.passed ? 1 : 0;
        c.value = r.value;
        c.bound = r.bound;
        std::snprintf(c.detail, sizeof(c.detail), "%s", r.detail.c_str());
      }
    }
    return LEADEL_OK;
  } catch (...) {
    return map_exception();
  }
}

}  // extern "C"
