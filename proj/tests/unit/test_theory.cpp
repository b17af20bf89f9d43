#include <cmath>

#include "doctest.h"
#include "sparsekit/errors.hpp"
#include "sparsekit/theory.hpp"

using namespace sparsekit;
using namespace sparsekit::theory;

namespace {

DecayParams params(std::size_t s, double lambda, double m, std::size_t t, std::size_t k, double mu) {
  DecayParams p;
  p.sparsity = s;
  p.lambda = lambda;
  p.m = m;
  p.t = t;
  p.num_atoms = k;
  p.mu = mu;
  return p;
}

}  // namespace

TEST_SUITE("theory") {
  TEST_CASE("noiseless condition at a single atom") {
    const auto r = noiseless_condition(params(1, 1.0, 1.0, 1, 256, 0.125));
    // (1 + √ln 256 + 1) / 64
    CHECK(r.lhs == doctest::Approx(0.06804406320360859).epsilon(1e-13));
    CHECK(r.threshold == 1.0 / 13.0);
    CHECK(r.satisfied);
    CHECK(r.failure_probability == 0.0078125);
    CHECK(r.label == "noiseless_full_support");
  }

  TEST_CASE("zero coherence always satisfies the noiseless condition") {
    const auto r = noiseless_condition(params(40, 0.01, 3.0, 5, 4096, 0.0));
    CHECK(r.lhs == 0.0);
    CHECK(r.satisfied);
  }

  TEST_CASE("noiseless lhs increases in S, mu, m and t") {
    for (double lambda : {0.5, 1.0, 4.0}) {
      for (std::size_t k : {256u, 512u}) {
        double prev = 0.0;
        for (std::size_t s = 1; s <= 48; ++s) {
          const double v = noiseless_condition(params(s, lambda, 1.0, 1, k, 0.125)).lhs;
          CHECK(v > prev);
          prev = v;
        }
        prev = 0.0;
        for (double mu = 0.01; mu < 0.9; mu += 0.05) {
          const double v = noiseless_condition(params(8, lambda, 1.0, 1, k, mu)).lhs;
          CHECK(v > prev);
          prev = v;
        }
        prev = 0.0;
        for (double m = 0.5; m < 5.0; m += 0.25) {
          const double v = noiseless_condition(params(8, lambda, m, 1, k, 0.125)).lhs;
          CHECK(v > prev);
          prev = v;
        }
        prev = 0.0;
        for (std::size_t t = 1; t <= 10; ++t) {
          const double v = noiseless_condition(params(8, lambda, 1.0, t, k, 0.125)).lhs;
          CHECK(v > prev);
          prev = v;
        }
      }
    }
  }

  TEST_CASE("failure probability is reported raw") {
    const auto r = noiseless_condition(params(7, 1.0, 0.5, 1, 256, 0.1));
    CHECK(r.failure_probability == 14.0);
    const auto q = noiseless_condition(params(3, 1.0, 2.0, 1, 10, 0.1));
    CHECK(q.failure_probability == doctest::Approx(6.0e-3).epsilon(1e-14));
  }

  TEST_CASE("satisfied flag matches the inequality") {
    for (std::size_t s = 1; s <= 30; ++s) {
      for (double mu : {0.02, 0.05, 0.125, 0.3}) {
        const auto p = params(s, 1.5, 1.0, 1, 256, mu);
        const auto r = noiseless_condition(p);
        CHECK(r.satisfied == (r.lhs <= r.threshold));
        const auto prof = geometric_profile(s, 0.8);
        const auto [a, b] = noisy_conditions(p, s, 0.01, prof);
        CHECK(a.satisfied == (a.lhs <= a.threshold));
        CHECK(b.satisfied == (b.lhs <= b.threshold));
        const auto [w1, w2] = worst_case_conditions(s, mu, prof);
        CHECK(w1.strict);
        CHECK(w1.satisfied == (w1.lhs < w1.threshold));
        CHECK(w2.satisfied == (w2.lhs < w2.threshold));
      }
    }
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(noiseless_condition(params(1, 0.0, 1.0, 1, 256, 0.1)), InvalidArgument);
    CHECK_THROWS_AS(noiseless_condition(params(1, 1.0, 0.4, 1, 256, 0.1)), InvalidArgument);
    CHECK_THROWS_AS(noiseless_condition(params(1, 1.0, 1.0, 0, 256, 0.1)), InvalidArgument);
    CHECK_THROWS_AS(noiseless_condition(params(0, 1.0, 1.0, 1, 256, 0.1)), InvalidArgument);
    CHECK_THROWS_AS(noiseless_condition(params(1, 1.0, 1.0, 1, 256, 1.0)), InvalidArgument);
    const auto prof = geometric_profile(4, 0.9);
    CHECK_THROWS_AS(noisy_conditions(params(4, 1.0, 1.0, 1, 256, 0.1), 5, 0.0, prof), InvalidArgument);
    CHECK_THROWS_AS(noisy_conditions(params(4, 1.0, 1.0, 1, 256, 0.1), 0, 0.0, prof), InvalidArgument);
  }

  TEST_CASE("noise floor") {
    const double nu = snr_to_nu(256.0, 128);
    const auto p = params(16, 1.0, 1.0, 1, 256, 0.125);
    const auto [coh, floor] = noisy_conditions(p, 16, nu, geometric_profile(16, 1.0));
    CHECK(floor.lhs == doctest::Approx(0.1821213211907464).epsilon(1e-13));
    CHECK(floor.threshold == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(floor.satisfied);
    CHECK(floor.failure_probability == doctest::Approx(4.0 * 16 / 256.0).epsilon(1e-15));
    CHECK(coh.failure_probability == floor.failure_probability);
    CHECK(coh.threshold == 0.1);

    const auto [c0, f0] = noisy_conditions(p, 3, 0.0, geometric_profile(16, 0.5));
    CHECK(f0.lhs == 0.0);
    CHECK(f0.satisfied);
  }

  TEST_CASE("the noisy coherence condition is the stricter one") {
    for (std::size_t s = 1; s <= 48; s += 3) {
      for (double lambda : {0.25, 1.0, 5.0}) {
        for (double mu : {0.01, 0.05, 0.125, 0.37}) {
          const auto p = params(s, lambda, 1.0, 1, 256, mu);
          const auto quiet = noiseless_condition(p);
          const auto [noisy, floor] = noisy_conditions(p, s, 0.0, geometric_profile(s, 0.9));
          CHECK(noisy.lhs / noisy.threshold > quiet.lhs / quiet.threshold);
          if (noisy.satisfied) CHECK(quiet.satisfied);
        }
      }
    }
  }

  TEST_CASE("worst case examples") {
    const auto [a, b] = worst_case_conditions(3, 0.125, geometric_profile(3, 0.9));
    CHECK(a.lhs == 0.75);
    CHECK(a.satisfied);
    CHECK(a.failure_probability == 0.0);

    const auto [c, d] = worst_case_conditions(5, 0.1, geometric_profile(5, 1.0));
    CHECK(d.threshold == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.satisfied == false);
    CHECK(d.satisfied == c.satisfied);

    const auto [e, f] = worst_case_conditions(4, 0.125, geometric_profile(4, 0.75));
    CHECK(f.lhs == 1.0);
    CHECK(f.threshold == doctest::Approx(0.421875).epsilon(1e-14));
    CHECK(!f.satisfied);
  }

  TEST_CASE("recoverable count") {
    CHECK(recoverable_count(geometric_profile(16, 1.0), 0.0, 256) == 16);
    const double nu256 = snr_to_nu(256.0, 128);
    CHECK(2.0 * nu256 * nu256 * std::log(256.0) == doctest::Approx(3.384507717577858e-4).epsilon(1e-13));
    CHECK(recoverable_count(geometric_profile(16, 1.0), nu256, 256) == 16);
    CHECK(recoverable_count(geometric_profile(32, 0.75), nu256, 256) == 13);
    CHECK(recoverable_count(geometric_profile(32, 0.75), snr_to_nu(16.0, 128), 256) == 8);
  }

  TEST_CASE("recoverable count is monotone") {
    for (double a : {0.75, 0.85, 0.95, 1.0}) {
      std::size_t prev = 1000;
      for (double nu = 0.0; nu < 0.2; nu += 0.005) {
        const auto c = recoverable_count(geometric_profile(24, a), nu, 256);
        CHECK(c <= prev);
        prev = c;
      }
    }
    for (double a : {0.75, 0.9}) {
      std::size_t prev = 0;
      for (std::size_t s = 1; s <= 48; ++s) {
        const auto c = recoverable_count(geometric_profile(s, a), 0.0055, 256);
        CHECK(c >= prev);
        prev = c;
      }
    }
  }

  TEST_CASE("geometric decay translation") {
    const auto p = geometric_to_decay_params(0.9, 20, 1.0, 256, 0.125);
    CHECK(p.lambda == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(p.t == 1);
    const auto q = geometric_to_decay_params(0.75, 4, 1.0, 256, 0.125);
    CHECK(q.lambda == 1.0);
    CHECK(noiseless_condition(q).lhs ==
          doctest::Approx((4.0 + std::sqrt(4.0 * std::log(256.0)) + 1.0) * 4.0 / 64.0).epsilon(1e-14));
    // ⌈S/λ⌉ must not round 10.000000000000002 up
    CHECK(noiseless_condition(p).lhs ==
          doctest::Approx((10.0 + std::sqrt(10.0 * std::log(256.0)) + 1.0) * 20.0 / 64.0).epsilon(1e-14));
    const auto r = geometric_to_decay_params(0.9, 3, 20, 1.0, 256, 0.125);
    CHECK(r.lambda == doctest::Approx(20.0 * (1.0 - 0.729)).epsilon(1e-14));
    CHECK_THROWS_AS(geometric_to_decay_params(1.0, 20, 1.0, 256, 0.125), InvalidArgument);
    double prev = 0.0;
    for (double a : {0.9, 0.99, 0.999, 0.9999}) {
      const double v = noiseless_condition(geometric_to_decay_params(a, 20, 1.0, 256, 0.125)).lhs;
      CHECK(v > prev);
      prev = v;
    }
    CHECK(!noiseless_condition(geometric_to_decay_params(0.9999, 20, 1.0, 256, 0.125)).satisfied);
  }
}
