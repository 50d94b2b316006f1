#include <doctest.h>

#include <cmath>

#include "l0bb/relaxation.hpp"
#include "support/oracles.hpp"

using namespace l0bb;
using testsup::Rng;

TEST_CASE("relaxation/g value examples") {
  const Relaxation r2(Penalty::l2norm(0.25), 0.1, 1);
  CHECK(r2.g_value(0, 0.0) == 0.0);
  CHECK(r2.g_value(0, 2.0) == doctest::Approx(1.1));
  const Relaxation rb(Penalty::bigm(1.0), 0.25, 1);
  CHECK(rb.g_value(0, 2.0) == kInf);
}

TEST_CASE("relaxation/g conjugate examples and grid oracle") {
  const Penalty bigm = Penalty::bigm(1.0);
  const Relaxation rb(bigm, 0.25, 1);
  CHECK(rb.g_conjugate(0, 0.0) == 0.0);
  CHECK(rb.g_conjugate(0, 0.75) == doctest::Approx(0.5));
  const Penalty l2 = Penalty::l2norm(0.25);
  const Relaxation r2(l2, 0.1, 1);
  CHECK(r2.g_conjugate(0, 1.0) == doctest::Approx(0.9));

  Rng rng(9001);
  for (auto kind : testsup::kNativePenalties) {
    for (int trial = 0; trial < 6; ++trial) {
      const Penalty h = make_penalty(kind, rng);
      const double lmbd = rng.uniform(0.05, 1.5);
      const Relaxation relax(h, lmbd, 1);
      const double v = rng.normal(0.0, 1.2);
      const double analytic = relax.g_conjugate(0, v);
      if (analytic == kInf) continue;
      const double numeric = testsup::numeric_g_conjugate(h, lmbd, 0, v);
      CHECK(analytic == doctest::Approx(numeric).epsilon(1e-6));
    }
  }
}

TEST_CASE("relaxation/g biconjugate examples") {
  const Relaxation rb(Penalty::bigm(1.0), 0.25, 1);
  CHECK(rb.g_biconjugate(0, 0.0) == 0.0);
  CHECK(rb.g_biconjugate(0, 0.5) == doctest::Approx(0.125));
  CHECK(rb.g_biconjugate(0, 1.5) == kInf);
  const Relaxation r2(Penalty::l2norm(0.25), 0.1, 1);
  CHECK(r2.g_biconjugate(0, 1.0) == doctest::Approx(0.35));
}

TEST_CASE("relaxation/g biconjugate matches the numerical envelope") {
  Rng rng(9002);
  for (auto kind : testsup::kNativePenalties) {
    for (int trial = 0; trial < 4; ++trial) {
      const Penalty h = make_penalty(kind, rng);
      const double lmbd = rng.uniform(0.05, 1.5);
      const Relaxation relax(h, lmbd, 1);
      const double mu = relax.params(0).mu_pos;
      const double span = std::isfinite(mu) ? 3.0 * std::max(mu, 0.5) : 10.0;
      for (int k = 0; k < 24; ++k) {
        // Fractional offset keeps samples off the envelope's breakpoints,
        // where the extended-real jump makes comparisons ill-posed.
        const double x = -span + 2.0 * span * (k + 0.371) / 24.0;
        const double analytic = relax.g_biconjugate(0, x);
        const double numeric = testsup::numeric_g_biconjugate(relax, 0, x);
        if (analytic == kInf) {
          CHECK(numeric == kInf);
        } else {
          CHECK(std::abs(analytic - numeric) <=
                1e-6 * std::max(1.0, std::abs(analytic)));
        }
      }
    }
  }
}

TEST_CASE("relaxation/envelope minorizes g and is convex") {
  Rng rng(9003);
  for (auto kind : testsup::kNativePenalties) {
    const Penalty h = make_penalty(kind, rng);
    const double lmbd = rng.uniform(0.05, 1.5);
    const Relaxation relax(h, lmbd, 1);
    for (int k = 0; k < 60; ++k) {
      const double x = rng.normal(0.0, 2.0);
      CHECK(relax.g_biconjugate(0, x) <= relax.g_value(0, x) + 1e-12);
    }
    for (int k = 0; k < 40; ++k) {
      const double a = rng.normal(0.0, 2.0);
      const double b = rng.normal(0.0, 2.0);
      const double ga = relax.g_biconjugate(0, a);
      const double gb = relax.g_biconjugate(0, b);
      if (ga == kInf || gb == kInf) continue;
      const double mid = relax.g_biconjugate(0, 0.5 * (a + b));
      CHECK(mid <= 0.5 * ga + 0.5 * gb + 1e-10);
    }
  }
}

TEST_CASE("relaxation/g biconjugate subdiff examples") {
  const Relaxation r1(Penalty::l1norm(0.5), 0.3, 1);
  CHECK(r1.g_biconjugate_subdiff(0, 0.0) == Interval{-0.5, 0.5});

  const double beta = 0.25, lmbd = 0.1;
  const Relaxation r2(Penalty::l2norm(beta), lmbd, 1);
  const double mu = std::sqrt(lmbd / beta);
  const Interval at_mu = r2.g_biconjugate_subdiff(0, mu);
  CHECK(at_mu.lo == doctest::Approx(2.0 * std::sqrt(beta * lmbd)));
  CHECK(at_mu.hi == doctest::Approx(at_mu.lo));  // tau = kappa for quadratics

  const Relaxation rb(Penalty::bigm(1.0), 0.25, 1);
  const Interval at_m = rb.g_biconjugate_subdiff(0, 1.0);
  CHECK(at_m.lo == doctest::Approx(0.25));
  CHECK(at_m.hi == kInf);
  CHECK(rb.g_biconjugate_subdiff(0, 1.5).is_empty());
}

TEST_CASE("relaxation/g biconjugate prox examples, oracle and optimality") {
  const Relaxation r0(Penalty::l2norm(0.25), 0.1, 1);
  CHECK(r0.g_biconjugate_prox(0, 0.0, 1.0) == 0.0);
  const Relaxation r1(Penalty::l1norm(0.5), 0.1, 1);
  CHECK(r1.g_biconjugate_prox(0, 2.0, 1.0) == doctest::Approx(1.5));
  const Relaxation rb(Penalty::bigm(1.0), 0.25, 1);
  CHECK(rb.g_biconjugate_prox(0, 2.0, 1.0) == doctest::Approx(1.0));

  Rng rng(9004);
  for (auto kind : testsup::kNativePenalties) {
    for (int trial = 0; trial < 8; ++trial) {
      const Penalty h = make_penalty(kind, rng);
      const double lmbd = rng.uniform(0.05, 1.5);
      const Relaxation relax(h, lmbd, 1);
      const double v = rng.normal(0.0, 2.0);
      const double eta = rng.uniform(0.1, 3.0);
      const double p = relax.g_biconjugate_prox(0, v, eta);
      const double oracle = testsup::numeric_prox(
          [&](double t) { return relax.g_biconjugate(0, t); }, v, eta);
      const double obj_p =
          0.5 * (p - v) * (p - v) + eta * relax.g_biconjugate(0, p);
      const double obj_o =
          0.5 * (oracle - v) * (oracle - v) + eta * relax.g_biconjugate(0, oracle);
      CHECK(obj_p <= obj_o + 1e-9 * std::max(1.0, std::abs(obj_o)));
      const Interval sd = relax.g_biconjugate_subdiff(0, p);
      CHECK(sd.contains((v - p) / eta, 1e-9));
    }
  }
}

TEST_CASE("relaxation/relaxed term dispatch") {
  const Relaxation relax(Penalty::l2norm(0.25), 0.1, 2);
  CHECK(relax.term_value(CoordStatus::FixedZero, 0, 0.0) == 0.0);
  CHECK(relax.term_value(CoordStatus::FixedZero, 0, 0.1) == kInf);
  CHECK(relax.term_conjugate(CoordStatus::FixedNonzero, 0, 1.0) ==
        doctest::Approx(0.9));
  CHECK(relax.term_conjugate(CoordStatus::Free, 0, 0.0) == 0.0);
  CHECK(relax.term_conjugate(CoordStatus::FixedZero, 0, 123.0) == 0.0);
  CHECK(relax.term_prox(CoordStatus::FixedZero, 0, 5.0, 1.0) == 0.0);
  CHECK(relax.term_subdiff(CoordStatus::FixedZero, 0, 0.0) == Interval::all());
  CHECK(relax.term_subdiff(CoordStatus::FixedZero, 0, 1.0).is_empty());
}

TEST_CASE("relaxation/status tightening never lowers the term") {
  Rng rng(9005);
  for (auto kind : testsup::kNativePenalties) {
    const Penalty h = make_penalty(kind, rng);
    const double lmbd = rng.uniform(0.05, 1.5);
    const Relaxation relax(h, lmbd, 1);
    CHECK(relax.term_value(CoordStatus::Free, 0, 0.0) == 0.0);
    for (int k = 0; k < 40; ++k) {
      const double x = rng.normal(0.0, 2.0);
      const double fixed = relax.term_value(CoordStatus::FixedNonzero, 0, x);
      const double free_term = relax.term_value(CoordStatus::Free, 0, x);
      CHECK(fixed >= free_term - 1e-12);
    }
  }
}
