/* C interface to the leader-election simulator and analytics library.
 *
 * Every function returns a leadel_status; outputs are written through
 * pointers. Variable-size results (per-trial data) live behind the opaque
 * leadel_run handle.
 */
#ifndef LEADEL_LEADEL_H
#define LEADEL_LEADEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum leadel_status {
  LEADEL_OK = 0,
  LEADEL_EINVAL = 1,    /* bad argument / precondition violated */
  LEADEL_EDOMAIN = 2,   /* parameter outside its mathematical domain */
  LEADEL_EOVERFLOW = 3, /* enumeration / length cap exceeded */
  LEADEL_EINTERNAL = 4  /* invariant breach, should never happen */
} leadel_status;

const char* leadel_status_str(leadel_status status);
/* Detail message of the last failing call on this thread ("" if none). */
const char* leadel_last_error(void);
const char* leadel_version(void);

typedef struct leadel_config {
  uint64_t n;          /* station count, >= 2 */
  double alpha;        /* growth factor, > 1 */
  uint32_t k0;         /* first wake exponent, >= 1 */
  uint32_t algo;       /* 1 = strong model, 2 = weak model */
  uint64_t trials;
  uint64_t seed;
  uint32_t max_rounds; /* 0 = default 1000 */
  uint32_t threads;    /* 0 = hardware concurrency */
} leadel_config;

typedef struct leadel_stats {
  double mean, variance, min, max, median, q90;
} leadel_stats;

typedef struct leadel_summary {
  uint64_t trials;
  uint64_t nonterminated;
  uint64_t uninformed;
  leadel_stats rounds, slots, max_awake;
  double mean_awake_per_station;
} leadel_summary;

typedef struct leadel_theory {
  uint32_t j_star;
  double p_star;
  double alpha_sup;
  double c_value;
  double rounds_bound;
  double time_bound;
  double awake_coeff;
} leadel_theory;

typedef struct leadel_round_report {
  uint64_t successes;
  uint64_t trials;
  double freq, ci_low, ci_high; /* empirical, 99% binomial interval */
  double p_exact;               /* closed-form p_j (or p'_j) */
  double s, t;                  /* p = t * s decomposition */
  uint64_t inner_length;
} leadel_round_report;

typedef struct leadel_mellin_report {
  uint32_t m;
  double n;
  uint32_t r;
  double direct_sum;
  double asymptote;
  double amplitude_bound;
  double error_term;
  double residual;
  int within_band;
} leadel_mellin_report;

typedef struct leadel_constants_report {
  double series_sum;
  double sup_amplitude;
  double fluctuation_factor;
  double s_bound;
  double t_bound;
  double p_star_product;
  double p_star_paper;
  uint32_t truncation_index;
} leadel_constants_report;

/* ---- simulation ---------------------------------------------------------- */

/* Runs all trials up front; the handle then serves summary and CDF queries. */
typedef struct leadel_run leadel_run;

leadel_status leadel_run_new(const leadel_config* config, leadel_run** out);
void leadel_run_free(leadel_run* run);
leadel_status leadel_run_summary(const leadel_run* run, leadel_summary* out);
/* P(rounds <= k) over all trials; k in [1, max_rounds]. */
leadel_status leadel_run_rounds_cdf(const leadel_run* run, uint32_t k,
                                    double* out);
/* DKW dominance test of the rounds CDF against j* + Geometric(p_star). */
leadel_status leadel_run_dominance(const leadel_run* run, double p_star,
                                   double confidence, int* pass,
                                   double* margin, double* band);

/* One-shot convenience wrapper around leadel_run_new + summary. */
leadel_status leadel_simulate(const leadel_config* config,
                              leadel_summary* out);

/* Simulates the standalone round j and evaluates the closed forms for it. */
leadel_status leadel_round_prob(const leadel_config* config, uint32_t j,
                                leadel_round_report* out);

/* ---- analytics ----------------------------------------------------------- */

leadel_status leadel_theory_bounds(const leadel_config* config, double p_star,
                                   leadel_theory* out);
/* Default uniform success bounds: 0.14846 (algo 1), 0.07929 (algo 2). */
double leadel_default_p_star(uint32_t algo);
leadel_status leadel_cost(double x, double y, double* out);
leadel_status leadel_optimal_alpha(double p_star, double tol, double* alpha,
                                   double* c_min);
/* variant: 'U' or 'V'. n may be non-integral (analytic sweep). */
leadel_status leadel_mellin(char variant, uint32_t m, double n, uint32_t r,
                            leadel_mellin_report* out);
leadel_status leadel_constants(uint32_t algo, leadel_constants_report* out);

/* ---- record formatting ---------------------------------------------------- */

/* Buffer convention: the full size needed (excluding the NUL) is written to
 * *needed; the buffer is filled and NUL-terminated when cap suffices.
 * Theory bounds embedded in records use the default p_star; they are zeroed
 * when alpha falls outside (1, 1/(1-p_star)).
 * timestamp may be NULL or "0" for deterministic output. */
leadel_status leadel_csv_header(char* buf, size_t cap, size_t* needed);
leadel_status leadel_run_csv(const leadel_run* run, char* buf, size_t cap,
                             size_t* needed);
leadel_status leadel_run_json(const leadel_run* run, const char* timestamp,
                              char* buf, size_t cap, size_t* needed);

/* ---- verification ---------------------------------------------------------- */

typedef struct leadel_check {
  char group[24];
  char name[64];
  int passed;
  double value;
  double bound;
  char detail[192];
} leadel_check;

/* Runs the verification suite. `only` is a comma-separated group filter or
 * NULL for everything; results are truncated to `cap` entries and the full
 * count is reported through *count. progress != 0 logs to stderr. */
leadel_status leadel_verify(const char* only, uint64_t seed, int progress,
                            leadel_check* out, size_t cap, size_t* count);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* LEADEL_LEADEL_H */
