#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "normbound/normal_kernel.hpp"
#include "normbound/quadrature.hpp"

using namespace normbound;

namespace {

// Quadrature oracle for E (Z - t)_+^alpha, written in the factored form
// phi(t) * int_0^inf u^alpha exp(-t u - u^2/2) du so the integrand stays
// O(1) relative to the answer even deep in the tail.
double moment_oracle(int alpha, double t) {
  const long double tl = t;
  const auto f = [&](long double u) {
    long double p = 1;
    for (int i = 0; i < alpha; ++i) p *= u;
    return p * expl(-tl * u - u * u / 2);
  };
  // The integrand decays like exp(-tu) for t > 0 and exp(-u^2/2) always;
  // 60 + 8|t| covers both regimes to far below 1e-13 relative.
  const long double hi = 60 + 8 * fabsl(tl);
  const long double integral = integrate(f, 0.0L, hi, 1e-13L);
  return static_cast<double>(expl(-tl * tl / 2) * integral /
                             sqrtl(2 * acosl(-1.0L)));
}

}  // namespace

TEST_CASE("density and tail reference values") {
  CHECK(phi(0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
  CHECK(phi(3) == doctest::Approx(0.004431848411938007).epsilon(1e-15));
  CHECK(upper_tail(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(upper_tail(3) ==
        doctest::Approx(0.0013498980316300945).epsilon(1e-14));
  CHECK(upper_tail(-3) ==
        doctest::Approx(1 - 0.0013498980316300945).epsilon(1e-15));
}

TEST_CASE("tail complement law") {
  for (double t = -8; t <= 8; t += 0.37) {
    CHECK(upper_tail(t) + upper_tail(-t) ==
          doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("mills ratio") {
  CHECK(mills_ratio(0) ==
        doctest::Approx(1.2533141373155003).epsilon(1e-15));
  CHECK(mills_ratio(10) ==
        doctest::Approx(0.09902859647173192).epsilon(1e-14));
  // agreement of the direct ratio and the continued fraction at the switch
  CHECK(mills_ratio(8) ==
        doctest::Approx(upper_tail(8) / phi(8)).epsilon(1e-13));
  // large negative arguments overflow double; the ratio saturates at +inf
  CHECK(std::isinf(mills_ratio(-40)));
  for (double t = 1; t < 30; t += 1.3) {
    // phi(t) * mills = Psi identity wherever Psi is representable
    CHECK(phi(t) * mills_ratio(t) ==
          doctest::Approx(upper_tail(t)).epsilon(1e-13));
  }
}

TEST_CASE("truncated moments at reference points") {
  CHECK(truncated_moment(5, 0) ==
        doctest::Approx(3.1915382432114614).epsilon(1e-14));
  CHECK(truncated_moment(0, 2) ==
        doctest::Approx(upper_tail(2)).epsilon(1e-15));
  CHECK(truncated_moment(1, 0) ==
        doctest::Approx(0.3989422804014327).epsilon(1e-14));
  // E (Z - t)_+ -> -t as t -> -inf
  CHECK(truncated_moment(1, -20) == doctest::Approx(20.0).epsilon(1e-14));
}

TEST_CASE("moments agree with the quadrature oracle") {
  for (int alpha = 0; alpha <= 5; ++alpha) {
    for (double t = -10; t <= 10; t += 0.5) {
      const double want = moment_oracle(alpha, t);
      CHECK(truncated_moment(alpha, t) ==
            doctest::Approx(want).epsilon(1e-9));
    }
  }
}

TEST_CASE("recursion and series branches agree at the switch") {
  for (int alpha = 2; alpha <= 5; ++alpha) {
    CHECK(truncated_moment(alpha, 9.99999990) ==
          doctest::Approx(truncated_moment(alpha, 10.0000001))
              .epsilon(1e-8));
  }
}

TEST_CASE("moment monotonicity in t") {
  for (int alpha = 0; alpha <= 5; ++alpha) {
    double prev = truncated_moment(alpha, -12);
    for (double t = -11.5; t <= 12; t += 0.5) {
      const double cur = truncated_moment(alpha, t);
      CHECK(cur <= prev * (1 + 1e-14));
      prev = cur;
    }
  }
}

TEST_CASE("closed form R matches the alpha = 5 moment") {
  CHECK(closed_form_R(-3) ==
        doctest::Approx(558.00017112837987).epsilon(1e-13));
  for (double t = -30; t <= 40; t += 0.25) {
    CHECK(closed_form_R(t) ==
          doctest::Approx(truncated_moment(5, t)).epsilon(1e-9));
  }
}

TEST_CASE("scaled moment") {
  CHECK(scaled_moment(2, 0, 5) ==
        doctest::Approx(102.12922378276677).epsilon(1e-13));
  CHECK(scaled_moment(1, 1.5, 3) ==
        doctest::Approx(truncated_moment(3, 1.5)).epsilon(1e-15));
  // E (sZ - t)_+^a = s^a E (Z - t/s)_+^a by substitution
  for (double sc : {0.1, 0.7, 3.0}) {
    CHECK(scaled_moment(sc, 1.0, 4) ==
          doctest::Approx(std::pow(sc, 4) * truncated_moment(4, 1.0 / sc))
              .epsilon(1e-13));
  }
  CHECK_THROWS_AS(scaled_moment(0, 1, 2), std::domain_error);
  CHECK_THROWS_AS(truncated_moment(6, 0), std::domain_error);
  CHECK_THROWS_AS(truncated_moment(-1, 0), std::domain_error);
  CHECK_THROWS_AS(truncated_moment(2, NAN), std::domain_error);
}
