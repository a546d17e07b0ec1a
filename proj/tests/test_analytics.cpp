#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "leadel/analytics.hpp"

using namespace leadel;

TEST_CASE("rho closed form on hand-computed points") {
  // (4/4)(3/4)^3 and (2/2)(1/2)^1.
  CHECK(rho(2, 4) == doctest::Approx(0.421875).epsilon(1e-15));
  CHECK(rho(1, 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(rho(30, 2) == doctest::Approx(2.0 / (1u << 30)).epsilon(1e-6));
  CHECK_THROWS_AS(rho(0, 4), std::domain_error);
  CHECK_THROWS_AS(rho(2, 1), std::domain_error);
}

TEST_CASE("q_pair closed form on hand-computed points") {
  // (1/2) C(3,2) 4^-1 (1/2)^1 = 3/16; (1/2) C(2,2) 4^-1 = 1/8.
  CHECK(q_pair(1, 3) == doctest::Approx(3.0 / 16).epsilon(1e-15));
  CHECK(q_pair(1, 2) == doctest::Approx(1.0 / 8).epsilon(1e-15));
  CHECK_THROWS_AS(q_pair(0, 3), std::domain_error);
}

TEST_CASE("exact_round_success decomposes p = t * s consistently") {
  ElectionParams params{50, 1.5, 1};
  for (auto proto : {ProtocolKind::Alg1Strong, ProtocolKind::Alg2Weak}) {
    auto rep = exact_round_success(params, proto, 4);
    CHECK(rep.inner_length == inner_len(4, params.alpha));
    CHECK(rep.per_slot.size() == rep.inner_length);
    CHECK(rep.p == doctest::Approx(rep.t * rep.s).epsilon(1e-12));
    CHECK(rep.p > 0);
    CHECK(rep.p < 1);
    // Direct recomputation of s and t from the per-slot values.
    double s = 1, t = 0;
    for (double v : rep.per_slot) {
      s *= 1 - v;
      t += v / (1 - v);
    }
    CHECK(rep.s == doctest::Approx(s).epsilon(1e-14));
    CHECK(rep.t == doctest::Approx(t).epsilon(1e-14));
  }
  CHECK_THROWS_AS(
      exact_round_success(ElectionParams{4, 3.0, 1}, ProtocolKind::Alg1Strong,
                          60, 1000),
      std::overflow_error);
}

TEST_CASE("j_star on hand-computed points") {
  // log2(65536) = 16, log_2 16 = 4.
  CHECK(j_star(65536, 2.0) == 4);
  CHECK(j_star(10000, 1.0767) == 36);
  CHECK(j_star(2, 2.0) == 0);
  CHECK_THROWS_AS(j_star(1, 2.0), std::domain_error);
  CHECK_THROWS_AS(j_star(100, 0.5), std::domain_error);
}

TEST_CASE("cost constant and its domain") {
  // x y^3 / ((y-1)(1 - y(1-x))) at x = 1/2, y = 3/2: (27/16)/(1/8) = 13.5.
  CHECK(cost_C(0.5, 1.5) == doctest::Approx(13.5).epsilon(1e-12));
  CHECK_THROWS_AS(cost_C(0.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(cost_C(1.0, 1.5), std::domain_error);
  CHECK_THROWS_AS(cost_C(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(cost_C(0.5, 2.0), std::domain_error);  // y(1-x) = 1 diverges
}

TEST_CASE("optimal alpha sits at an interior minimum") {
  auto opt = optimal_alpha(0.14846);
  CHECK(opt.alpha > 1.0);
  CHECK(opt.alpha < 1.0 / (1.0 - 0.14846));
  double h = 1e-4;
  CHECK(opt.c <= cost_C(0.14846, opt.alpha - h));
  CHECK(opt.c <= cost_C(0.14846, opt.alpha + h));
  CHECK_THROWS_AS(optimal_alpha(0.0), std::domain_error);
  CHECK_THROWS_AS(optimal_alpha(1.0), std::domain_error);
}

TEST_CASE("theory_bounds wires the pieces together") {
  ElectionParams params{1024, 1.0767, 1};
  auto tb = theory_bounds(params, ProtocolKind::Alg1Strong, kP1Star);
  CHECK(tb.j_star == j_star(1024, 1.0767));
  CHECK(tb.alpha_sup == doctest::Approx(1.0 / (1.0 - kP1Star)).epsilon(1e-12));
  CHECK(tb.rounds_bound ==
        doctest::Approx(tb.j_star + 1.0 / kP1Star).epsilon(1e-12));
  CHECK(tb.c_value == doctest::Approx(cost_C(kP1Star, 1.0767)).epsilon(1e-12));
  CHECK(tb.time_bound > 0);
  CHECK(std::isfinite(tb.time_bound));
  // alpha beyond the geometric-sum radius has no finite time bound, but the
  // round and energy bounds survive.
  auto wide = theory_bounds(ElectionParams{1024, 1.2, 1},
                            ProtocolKind::Alg1Strong, kP1Star);
  CHECK(std::isinf(wide.time_bound));
  CHECK(std::isinf(wide.c_value));
  CHECK(wide.j_star == j_star(1024, 1.2));
  CHECK(wide.rounds_bound > 0);
}

TEST_CASE("|Gamma(m+iy)| satisfies the recurrence |z| |Gamma(z)|") {
  // |Gamma(m+1+iy)| = sqrt(m^2+y^2) |Gamma(m+iy)|.
  for (double y : {0.5, 3.0, 9.0644}) {
    for (uint32_t m = 1; m <= 8; ++m) {
      double lhs = gamma_abs(m + 1, y);
      double rhs = std::sqrt(double(m) * m + y * y) * gamma_abs(m, y);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
  // Frozen external value at m = 4, y = 2*pi/ln 2.
  CHECK(gamma_abs(4, 2.0 * M_PI / std::log(2.0)) ==
        doctest::Approx(3.994874595e-3).epsilon(1e-8));
  CHECK_THROWS_AS(gamma_abs(0, 1.0), std::domain_error);
}

TEST_CASE("fourier amplitudes converge fast and stay positive") {
  for (auto v : {MellinVariant::U, MellinVariant::V}) {
    for (uint32_t m : {1u, 2u, 11u}) {
      double a8 = fourier_amplitude(v, m, 8);
      double a16 = fourier_amplitude(v, m, 16);
      CHECK(a16 > 0);
      CHECK(a16 >= a8);  // partial sums of positive terms
      CHECK(a16 - a8 < 1e-15 * a16 + 1e-300);
    }
  }
}

TEST_CASE("mellin residual sits inside the fluctuation band") {
  for (auto v : {MellinVariant::U, MellinVariant::V}) {
    auto rep = mellin_check(v, 2, 1.0e6, 64);
    CHECK(rep.within_band);
    CHECK(rep.residual <= rep.amplitude_bound + rep.error_term);
  }
  CHECK_THROWS_AS(mellin_check(MellinVariant::U, 0, 1e6, 64),
                  std::domain_error);
  CHECK_THROWS_AS(mellin_check(MellinVariant::U, 2, 0.5, 64),
                  std::domain_error);
}

TEST_CASE("dominance check accepts a dominating CDF and rejects a shifted one") {
  const uint32_t jstar = 10;
  const double p = 0.14846;
  const uint64_t trials = 10000;
  std::vector<double> good(200), shifted(200);
  for (size_t k = 1; k <= good.size(); ++k) {
    auto geo = [&](double j0) {
      return double(k) > j0 ? 1.0 - std::pow(1.0 - p, double(k) - j0) : 0.0;
    };
    good[k - 1] = std::min(1.0, geo(jstar) + 0.01);  // slightly better
    shifted[k - 1] = geo(jstar + 5.0);               // clearly worse
  }
  good.back() = 1.0;
  shifted.back() = 1.0;
  CHECK(dominance_check(good, jstar, p, trials).pass);
  CHECK_FALSE(dominance_check(shifted, jstar, p, trials).pass);
  CHECK_THROWS_AS(dominance_check(good, jstar, p, 10),
                  std::invalid_argument);
}

TEST_CASE("lemma constants report is internally consistent") {
  for (auto proto : {ProtocolKind::Alg1Strong, ProtocolKind::Alg2Weak}) {
    auto rep = lemma_constants(proto);
    CHECK(rep.p_star_product ==
          doctest::Approx(rep.s_bound * rep.t_bound).epsilon(1e-12));
    CHECK(rep.p_star_paper == p_star_of(proto));
    CHECK(rep.sup_amplitude > 0);
    CHECK(rep.fluctuation_factor < 1.0);
    CHECK(rep.fluctuation_factor > 0.9);
  }
}
