#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leadel/protocol.hpp"

namespace leadel {

// Uniform per-round success lower bounds past round j_star (Theorems 1-2).
inline constexpr double kP1Star = 0.14846;
inline constexpr double kP2Star = 0.07929;

inline double p_star_of(ProtocolKind kind) {
  return kind == ProtocolKind::Alg1Strong ? kP1Star : kP2Star;
}

// Probability that inner slot i has exactly one transmitter among n
// stations waking with probability 2^-i:  (n/2^i) (1 - 1/2^i)^(n-1).
double rho(uint32_t i, uint64_t n);

// Probability of exactly one broadcaster and exactly one listener at inner
// slot k of the weak-model protocol:  (1/2) C(n,2) 4^-k (1 - 1/2^k)^(n-2).
double q_pair(uint32_t k, uint64_t n);

// Per-round success decomposition p_j = t_j * s_j over the slots of round j.
struct AnalyticReport {
  ProtocolKind protocol;
  uint32_t j = 0;
  uint32_t k0 = 1;
  uint64_t inner_length = 0;
  std::vector<double> per_slot;  // rho_(k,n) or q_(k,n), k = k0 .. k0+L-1
  double s = 0;                  // probability no slot has the configuration
  double t = 0;                  // sum of per-slot odds ratios
  double p = 0;                  // exactly one slot has the configuration
};

AnalyticReport exact_round_success(const ElectionParams& params,
                                   ProtocolKind protocol, uint32_t j,
                                   uint64_t enumeration_cap = 1000000);

// ceil(log_alpha log2 n), the round index past which the per-round success
// probability stays above p_star.
uint32_t j_star(uint64_t n, double alpha);

// Expected-time cost constant C(x,y) = x y^3 / ((y-1)(1 - y(1-x))).
// Defined for 0 < x < 1, y > 1, y(1-x) < 1; the double sum behind it
// diverges at the boundary.
double cost_C(double x, double y);

struct OptimalAlpha {
  double alpha = 0;
  double c = 0;
};

// Minimizes C(p_star, .) over (1, 1/(1-p_star)) by golden-section search,
// after a coarse scan confirming the bracket holds a single interior
// minimum.
OptimalAlpha optimal_alpha(double p_star, double tol = 1e-9);

struct TheoryBounds {
  uint32_t j_star = 0;
  double p_star = 0;
  double alpha_sup = 0;        // 1 / (1 - p_star)
  double c_value = 0;          // C(p_star, alpha)
  double rounds_bound = 0;     // j_star + 1/p_star
  double time_bound = 0;       // truncated double sum; +inf when alpha >= sup
  double awake_coeff = 0;      // slots per round upper bound: 2 or 3
};

TheoryBounds theory_bounds(const ElectionParams& params, ProtocolKind protocol,
                           double p_star);

// |Gamma(m + iy)| for integer m >= 1 via the exact product identity
// sqrt(pi y / sinh(pi y)) * prod_{t=1}^{m-1} sqrt(t^2 + y^2).
double gamma_abs(uint32_t m, double y);
double log_gamma_abs(uint32_t m, double y);  // natural log, overflow-safe

enum class MellinVariant : uint8_t { U, V };

// Sum of the Fourier coefficient magnitudes of the fluctuation series
// U_m / V_m; terms decay super-exponentially in |l|, L = 16 is far past
// convergence.
double fourier_amplitude(MellinVariant variant, uint32_t m, uint32_t terms = 16);

struct MellinReport {
  MellinVariant variant;
  uint32_t m = 0;
  double n = 0;
  uint32_t r = 0;
  double direct_sum = 0;
  double asymptote = 0;
  double amplitude_bound = 0;  // fluctuation band already scaled by 1/(m 2^m) or 1/m
  double error_term = 0;       // truncation terms (2/n)^m + (n/2^r)^m
  double residual = 0;         // |direct_sum - asymptote|
  bool within_band = false;
};

// Compares the truncated harmonic sum against its Mellin asymptote plus the
// fluctuation band. Note: the V-form constant is (2m-1)!/(4^m m^{2m} ln 2)
// with fluctuation V_m/m; direct summation confirms this normalization.
MellinReport mellin_check(MellinVariant variant, uint32_t m, double n,
                          uint32_t r);

// The numeric pipeline behind the liminf bounds on s_j, t_j and p_star.
struct ConstantsReport {
  ProtocolKind protocol;
  double series_sum = 0;       // 1.6702 (Alg1) / 1.6146 (Alg2) target
  double sup_amplitude = 0;    // sup over m of the fluctuation amplitude
  double fluctuation_factor = 0;  // exp(-sup * zeta(2 or 3)), 0.96092 for Alg1
  double s_bound = 0;          // 0.1809 / 0.19895
  double t_bound = 0;          // 0.82092 / recomputed ~0.3788 (paper: 0.39856)
  double p_star_product = 0;   // s_bound * t_bound
  double p_star_paper = 0;     // 0.14846 / 0.07929
  uint32_t truncation_index = 0;
};

ConstantsReport lemma_constants(ProtocolKind protocol);

struct DominanceResult {
  bool pass = false;
  double margin = 0;  // min over k of (empirical - reference + band)
  double band = 0;    // DKW half-width
};

// Checks that the empirical CDF of rounds-to-election dominates the CDF of
// j_star + Geometric(p_star) within the DKW band at the given confidence.
// cdf[k-1] must hold the empirical P(rounds <= k) over terminated runs.
DominanceResult dominance_check(std::span<const double> cdf, uint32_t j_star,
                                double p_star, uint64_t trials,
                                double confidence = 0.99);

}  // namespace leadel
