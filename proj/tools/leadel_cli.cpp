// Command-line driver over the C API. Orchestration only: every number that
// reaches stdout is produced by the library.
#include <algorithm>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "leadel/leadel.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;

struct CommonFlags {
  uint32_t algo = 1;
  std::vector<uint64_t> n{1024};
  std::vector<double> alpha{1.0767};
  uint32_t k0 = 1;
  uint64_t trials = 1000;
  uint64_t seed = 1;
  uint32_t max_rounds = 0;
  uint32_t threads = 0;
  std::string out;
  std::string format = "csv";
  bool deterministic = false;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool lists) {
  cmd->add_option("--algo", f.algo, "protocol: 1 strong, 2 weak")
      ->check(CLI::IsMember({1, 2}));
  if (lists)
    cmd->add_option("--n", f.n, "station counts")->delimiter(',');
  else
    cmd->add_option("--n", f.n, "station count")->delimiter(',')->expected(1);
  if (lists)
    cmd->add_option("--alpha", f.alpha, "growth factors")->delimiter(',');
  else
    cmd->add_option("--alpha", f.alpha, "growth factor")
        ->delimiter(',')
        ->expected(1);
  cmd->add_option("--k0", f.k0, "first wake exponent");
  cmd->add_option("--trials", f.trials, "trial count");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--max-rounds", f.max_rounds, "round cap (0 = default)");
  cmd->add_option("--threads", f.threads, "worker threads (0 = auto)");
  cmd->add_option("--out", f.out, "write records here instead of stdout");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--deterministic-output", f.deterministic,
                "zero the timestamp field");
}

leadel_config to_config(const CommonFlags& f, uint64_t n, double alpha) {
  return {n,      alpha,  f.k0,        f.algo,
          f.trials, f.seed, f.max_rounds, f.threads};
}

int fail(leadel_status st, const char* what) {
  std::cerr << "error: " << what << ": " << leadel_status_str(st);
  const char* detail = leadel_last_error();
  if (detail && *detail) std::cerr << " (" << detail << ")";
  std::cerr << "\n";
  return kExitUsage;
}

// Pulls a string out of the needed/cap convention.
template <typename F>
std::string fetch_string(F&& fill, leadel_status& st) {
  size_t needed = 0;
  st = fill(nullptr, 0, &needed);
  if (st != LEADEL_OK) return {};
  std::string s(needed, '\0');
  st = fill(s.data(), s.size() + 1, &needed);
  return s;
}

struct OutputSink {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  int open(const std::string& path) {
    if (path.empty()) return kExitOk;
    file.open(path);
    if (!file) {
      std::cerr << "error: cannot open " << path << "\n";
      return kExitUsage;
    }
    stream = &file;
    return kExitOk;
  }
  std::ostream& out() { return *stream; }
};

int emit_runs(const CommonFlags& f) {
  OutputSink sink;
  if (int rc = sink.open(f.out); rc != kExitOk) return rc;

  bool csv = f.format == "csv";
  leadel_status st = LEADEL_OK;
  if (csv) {
    std::string header = fetch_string(
        [](char* b, size_t c, size_t* n) { return leadel_csv_header(b, c, n); },
        st);
    if (st != LEADEL_OK) return fail(st, "csv header");
    sink.out() << header << "\n";
  }

  for (uint64_t n : f.n) {
    for (double alpha : f.alpha) {
      leadel_config cfg = to_config(f, n, alpha);
      leadel_run* run = nullptr;
      st = leadel_run_new(&cfg, &run);
      if (st != LEADEL_OK) return fail(st, "simulate");
      std::string row;
      if (csv) {
        row = fetch_string(
            [&](char* b, size_t c, size_t* k) {
              return leadel_run_csv(run, b, c, k);
            },
            st);
      } else {
        const char* ts = f.deterministic ? "0" : nullptr;
        row = fetch_string(
            [&](char* b, size_t c, size_t* k) {
              return leadel_run_json(run, ts, b, c, k);
            },
            st);
      }
      leadel_run_free(run);
      if (st != LEADEL_OK) return fail(st, "format record");
      sink.out() << row << "\n";
    }
  }
  return kExitOk;
}

int cmd_round_prob(const CommonFlags& f, uint32_t j) {
  leadel_config cfg = to_config(f, f.n.front(), f.alpha.front());
  leadel_round_report rep{};
  if (auto st = leadel_round_prob(&cfg, j, &rep); st != LEADEL_OK)
    return fail(st, "round-prob");
  std::printf("j=%u inner_length=%" PRIu64 "\n", j, rep.inner_length);
  std::printf("exact: p=%.10g s=%.10g t=%.10g\n", rep.p_exact, rep.s, rep.t);
  std::printf("simulated: freq=%.10g (%" PRIu64 "/%" PRIu64
              ") ci99=[%.10g, %.10g]\n",
              rep.freq, rep.successes, rep.trials, rep.ci_low, rep.ci_high);
  return kExitOk;
}

int cmd_theory(const CommonFlags& f, bool optimal) {
  if (optimal) {
    double p = leadel_default_p_star(f.algo);
    double alpha = 0, c = 0;
    if (auto st = leadel_optimal_alpha(p, 1e-9, &alpha, &c); st != LEADEL_OK)
      return fail(st, "optimal alpha");
    std::printf("algo=%u p_star=%.5f alpha_opt=%.6f C_min=%.6f\n", f.algo, p,
                alpha, c);
    return kExitOk;
  }
  std::printf("algo n alpha j_star p_star alpha_sup C rounds_bound "
              "time_bound awake_coeff\n");
  for (uint64_t n : f.n) {
    for (double alpha : f.alpha) {
      leadel_config cfg = to_config(f, n, alpha);
      leadel_theory t{};
      auto st =
          leadel_theory_bounds(&cfg, leadel_default_p_star(f.algo), &t);
      if (st != LEADEL_OK) return fail(st, "theory bounds");
      std::printf("%u %" PRIu64 " %.6g %u %.5f %.6f %.6g %.6g %.6g %.3g\n",
                  f.algo, n, alpha, t.j_star, t.p_star, t.alpha_sup,
                  t.c_value, t.rounds_bound, t.time_bound, t.awake_coeff);
    }
  }
  return kExitOk;
}

int cmd_mellin(char variant, std::vector<uint32_t> ms, std::vector<double> ns,
               uint32_t r) {
  std::printf("variant m n r direct asymptote band error residual ok\n");
  for (uint32_t m : ms) {
    for (double n : ns) {
      leadel_mellin_report rep{};
      if (auto st = leadel_mellin(variant, m, n, r, &rep); st != LEADEL_OK)
        return fail(st, "mellin");
      std::printf("%c %u %.6g %u %.10g %.10g %.4g %.4g %.4g %d\n", variant,
                  rep.m, rep.n, rep.r, rep.direct_sum, rep.asymptote,
                  rep.amplitude_bound, rep.error_term, rep.residual,
                  rep.within_band);
    }
  }
  return kExitOk;
}

int cmd_constants(uint32_t algo) {
  leadel_constants_report rep{};
  if (auto st = leadel_constants(algo, &rep); st != LEADEL_OK)
    return fail(st, "constants");
  std::printf("algo=%u\n", algo);
  std::printf("series_sum=%.6f\n", rep.series_sum);
  std::printf("sup_amplitude=%.8g\n", rep.sup_amplitude);
  std::printf("fluctuation_factor=%.6f\n", rep.fluctuation_factor);
  std::printf("s_bound=%.6f\n", rep.s_bound);
  std::printf("t_bound=%.6f\n", rep.t_bound);
  std::printf("p_star=%.6f (reference %.5f)\n", rep.p_star_product,
              rep.p_star_paper);
  return kExitOk;
}

int cmd_verify(const std::string& only, uint64_t seed, bool progress) {
  // One criterion per group; 64 slots is far above the suite size, and a
  // single call matters because the full suite runs for minutes.
  std::vector<leadel_check> checks(64);
  size_t count = 0;
  auto st = leadel_verify(only.empty() ? nullptr : only.c_str(), seed,
                          progress ? 1 : 0, checks.data(), checks.size(),
                          &count);
  if (st != LEADEL_OK) return fail(st, "verify");
  checks.resize(std::min(count, checks.size()));
  size_t failed = 0;
  for (const auto& c : checks) {
    std::printf("[%s] %-12s %-40s value=%.8g bound=%.8g %s\n",
                c.passed ? "PASS" : "FAIL", c.group, c.name, c.value, c.bound,
                c.detail);
    if (!c.passed) ++failed;
  }
  std::printf("%zu/%zu checks passed\n", count - failed, count);
  return failed == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator and analytic verifier for randomized leader "
               "election on no-collision-detection radio channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(leadel_version()));

  CommonFlags sim_flags;
  auto* sim = app.add_subcommand("simulate", "run elections, emit records");
  add_common(sim, sim_flags, false);

  CommonFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "grid over n x alpha");
  add_common(sweep, sweep_flags, true);

  CommonFlags rp_flags;
  uint32_t rp_j = 1;
  auto* rp = app.add_subcommand("round-prob",
                                "single-round success: exact vs simulated");
  add_common(rp, rp_flags, false);
  rp->add_option("--j", rp_j, "round index")->required();

  CommonFlags th_flags;
  bool th_optimal = false;
  auto* th = app.add_subcommand("theory", "j*, cost constant, bounds");
  add_common(th, th_flags, true);
  th->add_flag("--optimal", th_optimal, "minimize C over alpha instead");

  auto* me = app.add_subcommand("mellin", "harmonic-sum residual table");
  std::string me_variant = "U";
  std::vector<uint32_t> me_m{1, 2, 3};
  std::vector<double> me_n{1048576.0};
  uint32_t me_r = 64;
  me->add_option("--variant", me_variant, "U or V")
      ->check(CLI::IsMember({"U", "V"}));
  me->add_option("--m", me_m, "orders")->delimiter(',');
  me->add_option("--n", me_n, "evaluation points")->delimiter(',');
  me->add_option("--r", me_r, "truncation exponent");

  auto* co = app.add_subcommand("constants", "lemma constant pipeline");
  uint32_t co_algo = 1;
  co->add_option("--algo", co_algo, "protocol: 1 or 2")
      ->check(CLI::IsMember({1, 2}));

  auto* ve = app.add_subcommand("verify", "acceptance suite");
  std::string ve_only;
  uint64_t ve_seed = 20240815;
  bool ve_progress = false;
  ve->add_option("--only", ve_only, "comma-separated group filter");
  ve->add_option("--seed", ve_seed, "suite seed");
  ve->add_flag("--progress", ve_progress, "log per-criterion progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  if (sim->parsed()) return emit_runs(sim_flags);
  if (sweep->parsed()) return emit_runs(sweep_flags);
  if (rp->parsed()) return cmd_round_prob(rp_flags, rp_j);
  if (th->parsed()) return cmd_theory(th_flags, th_optimal);
  if (me->parsed()) return cmd_mellin(me_variant[0], me_m, me_n, me_r);
  if (co->parsed()) return cmd_constants(co_algo);
  if (ve->parsed()) return cmd_verify(ve_only, ve_seed, ve_progress);
  return kExitUsage;
}
