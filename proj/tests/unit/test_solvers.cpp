#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "sparsekit/errors.hpp"
#include "sparsekit/experiments.hpp"
#include "sparsekit/kernels.hpp"
#include "sparsekit/solvers.hpp"

using namespace sparsekit;

namespace {

std::set<std::size_t> as_set(const IndexList& v) { return {v.begin(), v.end()}; }

SparseSignal model_signal(const Dictionary& dict, std::size_t s, double alpha, std::uint64_t seed) {
  return synthesize(dict, geometric_profile(s, alpha), draw_support(dict.size(), s, seed),
                    draw_signs(s, derive_seed(seed, 1)));
}

}  // namespace

TEST_SUITE("solvers") {
  TEST_CASE("omp on an orthonormal basis sorts by magnitude") {
    const Dictionary dict(DenseMatrix::identity(5), DictionaryKind::Custom);
    const Vector y{0.0, 2.0, 0.0, 1.0, 0.0};
    const auto r = omp(dict, y, 2, 0.0);
    CHECK(r.support == IndexList{1, 3});
    CHECK(r.coeffs[0] == doctest::Approx(2.0));
    CHECK(r.coeffs[1] == doctest::Approx(1.0));
    CHECK(r.residual_norm < 1e-10);
    CHECK(r.status == SolveStatus::Completed);
    CHECK(r.residual_norms.size() == 3);
    CHECK(r.residual_norms.front() == doctest::Approx(std::sqrt(5.0)));
  }

  TEST_CASE("omp breaks ties towards the lowest index") {
    const Dictionary dict(DenseMatrix::identity(4), DictionaryKind::Custom);
    const Vector y{0.0, 1.0, 0.0, -1.0};
    CHECK(omp(dict, y, 1, 0.0).support == IndexList{1});
  }

  TEST_CASE("omp stops at the residual tolerance") {
    const auto dict = build_dirac_dct(16);
    const Vector y(dict.atom(3).begin(), dict.atom(3).end());
    const auto r = omp(dict, y, 10, 1e-9);
    CHECK(r.support == IndexList{3});
  }

  TEST_CASE("omp argument checks") {
    const auto dict = build_dirac_dct(8);
    const Vector y(8, 1.0);
    CHECK_THROWS_AS(omp(dict, y, 9, 0.0), InvalidArgument);
    CHECK_THROWS_AS(omp(dict, y, 2, -1.0), InvalidArgument);
    CHECK_THROWS_AS(omp(dict, Vector(7, 1.0), 2, 0.0), InvalidArgument);
  }

  TEST_CASE("omp surfaces rank degeneracy with the partial result") {
    // atom 1 is atom 0 tilted by 1e-7: once it is taken, atom 0 is the only
    // atom left with a nonzero correlation and its pivot collapses
    const double eps = 1e-7;
    const double n = std::sqrt(1.0 + eps * eps);
    const DenseMatrix m(3, 3, {1.0, 0.0, 0.0, 1.0 / n, eps / n, 0.0, 0.0, 0.0, 1.0});
    const Dictionary dict(m, DictionaryKind::Custom);
    const auto r = omp(dict, Vector{1.0, 1.0, 0.0}, 3, 0.0);
    CHECK(r.status == SolveStatus::RankDegenerate);
    CHECK(r.support == IndexList{1});
    CHECK(r.coeffs.size() == 1);
  }

  TEST_CASE("omp traces are monotone and never reselect") {
    const auto dict = build_dirac_dct_random(32, 4);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto y = oracles::random_vector(32, seed);
      const auto r = omp(dict, y, 32, 0.0);
      for (std::size_t i = 1; i < r.residual_norms.size(); ++i)
        CHECK(r.residual_norms[i] <= r.residual_norms[i - 1] + 1e-10 * r.residual_norms.front());
      CHECK(as_set(r.support).size() == r.support.size());
    }
  }

  TEST_CASE("omp residual is orthogonal to the selection") {
    const auto dict = build_dirac_dct(64);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto y = oracles::random_vector(64, 500 + seed);
      const auto r = omp(dict, y, 12, 0.0);
      Vector res = y;
      for (std::size_t i = 0; i < r.support.size(); ++i)
        for (std::size_t n = 0; n < 64; ++n) res[n] -= r.coeffs[i] * dict.atom(r.support[i])[n];
      CHECK(std::abs(std::sqrt(kernels::squared_norm(res)) - r.residual_norm) < 1e-10);
      for (auto j : r.support) CHECK(std::abs(kernels::dot(dict.atom(j), res)) < 1e-8);
    }
  }

  TEST_CASE("thresholding examples") {
    const auto dict = build_dirac_dct(16);
    const Vector y(dict.atom(21).begin(), dict.atom(21).end());
    CHECK(thresholding(dict, y, 1).support == IndexList{21});
    CHECK_THROWS_AS(thresholding(dict, y, 33), InvalidArgument);
  }

  TEST_CASE("orthonormal dictionaries make all three algorithms agree") {
    const auto dict = oracles::orthonormal_dictionary(24, 6);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      const std::size_t s = 1 + seed % 8;
      const auto sig = model_signal(dict, s, 0.85, seed);
      const auto truth = as_set(sig.support);
      CHECK(as_set(omp(dict, sig.clean, s, 0.0).support) == truth);
      CHECK(as_set(thresholding(dict, sig.clean, s).support) == truth);
      CHECK(as_set(bp_support(bp_solve(dict, sig.clean), s)) == truth);
    }
  }

  TEST_CASE("small sparsity is always recovered on Dirac-DCT") {
    const auto dict = build_dirac_dct(128);
    for (std::size_t s = 1; s <= 3; ++s) {
      int omp_ok = 0, bp_ok = 0;
      for (std::uint64_t t = 0; t < 200; ++t) {
        const auto sig = model_signal(dict, s, 1.0, 1000 * s + t);
        omp_ok += experiments::same_support(omp(dict, sig.clean, s, 1e-9).support, sig.support);
        bp_ok += experiments::same_support(bp_support(bp_solve(dict, sig.clean), s), sig.support);
      }
      CAPTURE(s);
      CHECK(omp_ok == 200);
      CHECK(bp_ok == 200);
    }
  }

  TEST_CASE("thresholding trails omp for flat coefficients") {
    const auto dict = build_dirac_dct(128);
    int omp_ok = 0, thr_ok = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
      const auto sig = model_signal(dict, 20, 1.0, 77'000 + t);
      omp_ok += experiments::same_support(omp(dict, sig.clean, 20, 1e-9).support, sig.support);
      thr_ok += experiments::same_support(thresholding(dict, sig.clean, 20).support, sig.support);
    }
    CHECK(thr_ok < omp_ok);
  }

  TEST_CASE("basis pursuit on a single atom") {
    const auto dict = build_dirac_dct(32);
    const Vector y(dict.atom(40).begin(), dict.atom(40).end());
    const auto sol = bp_solve(dict, y);
    CHECK(sol.status == SolveStatus::Completed);
    CHECK(sol.l1_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.x_hat[40] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bp_support(sol, 1) == IndexList{40});
  }

  TEST_CASE("basis pursuit of zero is zero") {
    const auto dict = build_dirac_dct(8);
    const auto sol = bp_solve(dict, Vector(8, 0.0));
    CHECK(sol.status == SolveStatus::Completed);
    CHECK(sol.l1_value == 0.0);
  }

  TEST_CASE("basis pursuit matches the vertex-enumeration LP oracle") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
      const auto dict = oracles::random_dictionary(6, 9, 900 + seed);
      const auto y = oracles::random_vector(6, 1900 + seed);
      const auto sol = bp_solve(dict, y);
      REQUIRE(sol.status == SolveStatus::Completed);
      const double expect = oracles::l1_min_by_vertices(oracles::to_eigen(dict.matrix()), oracles::to_eigen(y));
      CAPTURE(seed);
      CHECK(std::abs(sol.l1_value - expect) < 1e-6);
      CHECK(sol.primal_feasibility <= 1e-8);
    }
  }

  TEST_CASE("basis pursuit is no worse than the generating representation") {
    const auto dict = build_dirac_dct_random(64, 3);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const std::size_t s = 4 + seed % 28;
      const auto sig = model_signal(dict, s, 0.9, 4000 + seed);
      const auto sol = bp_solve(dict, sig.clean);
      REQUIRE(sol.status == SolveStatus::Completed);
      double gen = 0.0;
      for (double c : sig.profile.values) gen += c;
      CHECK(sol.l1_value <= gen + 1e-6);
      CHECK(sol.primal_feasibility <= 1e-8);
      CHECK(sol.duality_gap <= 1e-6);
    }
  }

  TEST_CASE("bp support tie rule") {
    BpSolution sol;
    sol.x_hat = {0.9, -0.9, 0.1};
    CHECK(bp_support(sol, 2) == IndexList{0, 1});
    sol.x_hat = {0.1, -0.9, 0.9};
    CHECK(bp_support(sol, 2) == IndexList{1, 2});
  }

  TEST_CASE("exhaustive search examples") {
    const auto dict = oracles::random_dictionary(8, 12, 5);
    const auto sig = model_signal(dict, 2, 0.7, 6);
    const auto best = exhaustive_best(dict, sig.clean, 2);
    CHECK(best.residual_norm < 1e-10);
    CHECK(as_set(best.support) == as_set(sig.support));

    const auto none = exhaustive_best(dict, sig.clean, 0);
    CHECK(none.support.empty());
    CHECK(none.residual_norm == doctest::Approx(std::sqrt(kernels::squared_norm(sig.clean))));

    CHECK_THROWS_AS(exhaustive_best(build_dirac_dct(128), sig.clean, 3), InvalidArgument);
  }

  TEST_CASE("exhaustive search residual is a lower bound for omp") {
    int agree = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto dict = oracles::random_dictionary(8, 12, 10'000 + seed);
      auto sig = add_noise(model_signal(dict, 2, 0.8, 20'000 + seed), 0.05, seed);
      const auto best = exhaustive_best(dict, sig.observed(), 2);
      const auto greedy = omp(dict, sig.observed(), 2, 0.0);
      CHECK(best.residual_norm <= greedy.residual_norm + 1e-10);
      const double ref = oracles::ls_residual(oracles::to_eigen(dict.matrix()), best.support, oracles::to_eigen(sig.observed()));
      CHECK(std::abs(best.residual_norm - ref) < 1e-10);
      agree += as_set(best.support) == as_set(greedy.support);
    }
    MESSAGE("omp matched the exhaustive support on " << agree << "/100 instances");
  }

  TEST_CASE("solvers are deterministic") {
    const auto dict = build_dirac_dct_random(32, 1);
    const auto y = oracles::random_vector(32, 2);
    CHECK(omp(dict, y, 10, 0.0).support == omp(dict, y, 10, 0.0).support);
    CHECK(bp_solve(dict, y).x_hat == bp_solve(dict, y).x_hat);
    CHECK(thresholding(dict, y, 7).coeffs == thresholding(dict, y, 7).coeffs);
  }

  TEST_CASE("least squares helpers") {
    const auto dict = build_dirac_dct(8);
    const auto r = least_squares_on(dict, Vector(8, 1.0), IndexList{8});
    CHECK(r.residual_norm < 1e-12);
    CHECK(top_magnitudes(Vector{1.0, -3.0, 3.0, 2.0}, 3) == IndexList{1, 2, 3});
    CHECK(status_name(SolveStatus::RankDegenerate) == "RankDegenerate");
  }
}
