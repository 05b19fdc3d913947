#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "normbound/normal_kernel.hpp"
#include "normbound/tail_bounds.hpp"

using namespace normbound;

TEST_CASE("hoeffding and pinelis reference values") {
  CHECK(c50() == doctest::Approx(5.6990653095389416).epsilon(1e-14));
  CHECK(hoeffding_bound({3, 1}) ==
        doctest::Approx(std::exp(-4.5)).epsilon(1e-15));
  CHECK(hoeffding_bound({-1, 1}) == 1.0);
  CHECK(hoeffding_bound({0, 1}) == 1.0);
  CHECK(pinelis_bound({3, 1}) ==
        doctest::Approx(0.007693157043477972).epsilon(1e-12));
  // deliberately unclamped below the crossover
  CHECK(pinelis_bound({0.1, 1}) > 1.0);
  CHECK_THROWS_AS(hoeffding_bound({1, 0}), std::domain_error);
  CHECK_THROWS_AS(pinelis_bound({1, -2}), std::domain_error);
}

TEST_CASE("combined bound branches") {
  CHECK(combined_bound({0, 1}) == 1.0);
  // below the crossover the exponential branch wins
  CHECK(combined_bound({1, 1}) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  // above it the Gaussian-tail branch wins
  CHECK(combined_bound({3, 1}) ==
        doctest::Approx(pinelis_bound({3, 1})).epsilon(1e-15));
}

TEST_CASE("pinelis/hoeffding crossover sits in [1.88, 1.90]") {
  auto diff = [](double x) {
    return pinelis_bound({x, 1}) - hoeffding_bound({x, 1});
  };
  CHECK(diff(1.88) > 0);
  CHECK(diff(1.90) < 0);
}

TEST_CASE("optimal bound") {
  const OptimalBound b2 = optimal_bound({2, 1});
  CHECK(b2.value <= std::exp(-2.0));
  CHECK(b2.value <= c50() * upper_tail(2));
  CHECK_FALSE(b2.boundary_limit);
  // never worse than the closed-form pair
  for (double x = 0; x <= 8; x += 0.1) {
    CHECK(optimal_bound({x, 1}).value <=
          combined_bound({x, 1}) + 1e-10);
  }
  // scale invariance
  for (double lam : {0.1, 7.0}) {
    CHECK(optimal_bound({2 * lam, lam}).value ==
          doctest::Approx(optimal_bound({2, 1}).value).epsilon(1e-9));
  }
  // x = 0: the infimum value 1 is approached as t -> -inf
  const OptimalBound b0 = optimal_bound({0, 1});
  CHECK(b0.value <= 1 + 1e-10);
  CHECK(b0.boundary_limit);
}

TEST_CASE("truncation bound") {
  const BoundQuery q{3, 1};
  const double base = combined_bound(q);
  CHECK(truncation_bound({{0.01, 0.02}, q}) ==
        doctest::Approx(base + 0.03).epsilon(1e-14));
  CHECK(truncation_bound({{}, q}) == doctest::Approx(base).epsilon(1e-15));
  CHECK(truncation_bound({{0.7, 0.7}, q}) == 1.0);
  CHECK_THROWS_AS(truncation_bound({{-0.1}, q}), std::domain_error);
}

TEST_CASE("maximal and snapshot moment bounds") {
  CHECK(maximal_tail_bound({2.5, 1}) ==
        doctest::Approx(combined_bound({2.5, 1})).epsilon(1e-15));
  const AlphaBeta ab{5, 2};
  const double snap = 3.1915382432114614;  // E (Z)_+^5
  // k <= k1, so the snapshot variant is never larger
  CHECK(snapshot_moment_bound(ab, 2, 0, snap) <=
        maximal_moment_bound(ab, 2, 0, snap) + 1e-15);
  // explicit arithmetic: k1 * snap / (x-t)^3
  CHECK(maximal_moment_bound(ab, 2, 0, snap) ==
        doctest::Approx(0.08794906045014363 * snap / 8).epsilon(1e-9));
  CHECK_THROWS_AS(maximal_moment_bound(ab, 0, 1, snap), std::domain_error);
}

TEST_CASE("pointwise k inequality") {
  const AlphaBeta ab{5, 2};
  for (double u = -3; u <= 6; u += 0.17) {
    CHECK(pointwise_k_check(ab, 2, 0, u));
  }
  // beta = 0 with the 0^0 = 0 convention: u <= x gives lhs 0
  CHECK(pointwise_k_check({5, 0}, 2, 0, 1.5));
  CHECK(pointwise_k_check({5, 0}, 2, 0, 5.0));
}

TEST_CASE("discrete rademacher bound") {
  // n = 4, x = 1: P(sum eps >= 2) = 5/16 exactly
  const double c30 = 2 * std::exp(3.0) / 9;
  CHECK(rademacher_discrete_bound(4, 1) ==
        doctest::Approx(c30 * 5 / 16).epsilon(1e-14));
  // x just past the lattice maximum: zero tail
  CHECK(rademacher_discrete_bound(4, 2.001) == 0.0);
  // x below the lattice minimum: whole mass
  CHECK(rademacher_discrete_bound(4, -3) ==
        doctest::Approx(c30).epsilon(1e-14));
  // largest exactly representable n
  CHECK(rademacher_discrete_bound(62, 1) > 0);
  CHECK_THROWS_AS(rademacher_discrete_bound(63, 1), std::range_error);
  CHECK_THROWS_AS(rademacher_discrete_bound(0, 1), std::domain_error);
}
