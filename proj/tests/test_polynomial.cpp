#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "kinetic/errors.hpp"
#include "kinetic/polynomial.hpp"
#include "test_util.hpp"

using kinetic::IntervalT;
using kinetic::Polynomial;

TEST_CASE("canonical form strips trailing zeros and rejects junk") {
  const Polynomial p{1.0, 2.0, 0.0, 0.0};
  CHECK(p.degree() == 1);
  CHECK(p.coefficients().size() == 2);
  CHECK(p.coefficient(5) == 0.0);

  const Polynomial zero{0.0, 0.0};
  CHECK(zero.is_zero());
  CHECK(zero.degree() == 0);
  CHECK(zero.eval(3.7) == 0.0);

  CHECK_THROWS_AS(Polynomial{std::nan("")}, kinetic::ContractError);
  CHECK_THROWS_AS(
      Polynomial(std::vector<double>(kinetic::kMaxWorkingDegree + 2, 1.0)),
      kinetic::DegreeOverflowError);
}

TEST_CASE("evaluation is plain Horner") {
  const Polynomial p{7.0, -2.0, 3.0};  // 3t^2 - 2t + 7
  CHECK(p.eval(1.5) == doctest::Approx(10.75).epsilon(1e-15));
  CHECK(p.eval(0.0) == 7.0);

  const Polynomial sq{1.0, -2.0, 1.0};  // (t-1)^2
  CHECK(sq.eval(1.0) == 0.0);
}

TEST_CASE("arithmetic matches pointwise arithmetic") {
  auto rng = testutil::make_rng(101);
  for (int iter = 0; iter < 50; ++iter) {
    const Polynomial a = testutil::random_poly(rng, 6, 2.0);
    const Polynomial b = testutil::random_poly(rng, 6, 2.0);
    const Polynomial sum = a + b;
    const Polynomial diff = a - b;
    const Polynomial prod = a * b;
    const Polynomial neg = -a;
    for (int k = 0; k < 100; ++k) {
      const double t = testutil::uniform(rng, -2.0, 2.0);
      CHECK(sum.eval(t) ==
            doctest::Approx(a.eval(t) + b.eval(t)).epsilon(1e-12));
      CHECK(diff.eval(t) ==
            doctest::Approx(a.eval(t) - b.eval(t)).epsilon(1e-12));
      CHECK(prod.eval(t) ==
            doctest::Approx(a.eval(t) * b.eval(t)).epsilon(1e-10));
      CHECK(neg.eval(t) == doctest::Approx(-a.eval(t)).epsilon(1e-15));
    }
  }
}

TEST_CASE("derivative follows the power rule") {
  const Polynomial p{-6.0, 11.0, -6.0, 1.0};  // t^3 - 6t^2 + 11t - 6
  const Polynomial d = p.derivative();
  CHECK(d.coefficients() == std::vector<double>{11.0, -12.0, 3.0});
  CHECK(Polynomial::constant(4.0).derivative().is_zero());
  CHECK(Polynomial{}.derivative().is_zero());
}

TEST_CASE("product degree overflow is rejected") {
  std::vector<double> big(34, 1.0);  // degree 33
  const Polynomial p{big};
  CHECK_THROWS_AS(p * p, kinetic::DegreeOverflowError);
}

TEST_CASE("roots of a separable cubic") {
  const Polynomial p{-6.0, 11.0, -6.0, 1.0};  // (t-1)(t-2)(t-3)
  const auto roots = kinetic::roots_in(p, IntervalT(0.0, 4.0));
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(roots[2] == doctest::Approx(3.0).epsilon(1e-9));

  // interval clipping
  const auto clipped = kinetic::roots_in(p, IntervalT(1.5, 4.0));
  REQUIRE(clipped.size() == 2);
  CHECK(clipped[0] == doctest::Approx(2.0));
  CHECK(clipped[1] == doctest::Approx(3.0));
}

TEST_CASE("double root is found once, without a sign change") {
  const Polynomial sq{1.0, -2.0, 1.0};  // (t-1)^2
  const auto roots = kinetic::roots_in(sq, IntervalT(0.0, 2.0));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-9));

  // a touch lifted just above the zero band is not a root
  const Polynomial lifted{1.0 + 1e-6, -2.0, 1.0};
  CHECK(kinetic::roots_in(lifted, IntervalT(0.0, 2.0)).empty());

  // inside the band it still counts
  const Polynomial grazing{1.0 + 1e-12, -2.0, 1.0};
  const auto near = kinetic::roots_in(grazing, IntervalT(0.0, 2.0));
  REQUIRE(near.size() == 1);
  CHECK(near[0] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("quartic with two tangential zeros keeps both") {
  // (t-1)^2 (t-3)^2 touches zero twice on [0,4]
  const Polynomial p =
      Polynomial{1.0, -2.0, 1.0} * Polynomial{9.0, -6.0, 1.0};
  const auto roots = kinetic::roots_in(p, IntervalT(0.0, 4.0));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(roots[1] == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("linear and constant edge cases") {
  const Polynomial line{8.0, -1.0};  // 8 - t
  const auto roots = kinetic::roots_in(line, IntervalT(0.0, 10.0));
  REQUIRE(roots.size() == 1);
  CHECK(roots[0] == 8.0);

  CHECK(kinetic::roots_in(Polynomial::constant(5.0), IntervalT(0.0, 1.0))
            .empty());
  CHECK_THROWS_AS(kinetic::roots_in(Polynomial{}, IntervalT(0.0, 1.0)),
                  kinetic::EverywhereZeroError);

  // degenerate interval: a single instant is a root exactly when p vanishes
  const auto at_instant = kinetic::roots_in(line, IntervalT(8.0, 8.0));
  REQUIRE(at_instant.size() == 1);
  CHECK(at_instant[0] == 8.0);
  CHECK(kinetic::roots_in(line, IntervalT(3.0, 3.0)).empty());
}

TEST_CASE("roots closer than the tolerance merge") {
  const double tol = 1e-3;
  // roots at 1 and 1 + tol/2
  const Polynomial p = Polynomial{-1.0, 1.0} * Polynomial{-(1.0 + 5e-4), 1.0};
  const auto roots = kinetic::roots_in(p, IntervalT(0.0, 2.0), tol);
  CHECK(roots.size() == 1);
}

TEST_CASE("random polynomials: residuals, sign structure, exhaustiveness") {
  auto rng = testutil::make_rng(2024);
  const double tol = kinetic::kDefaultTol;
  int checked = 0;
  for (int iter = 0; iter < 200; ++iter) {
    const Polynomial p = testutil::random_poly(rng, 6, 2.0);
    if (p.is_zero()) continue;
    const double hi = testutil::uniform(rng, 0.5, 4.0);
    const IntervalT iv(0.0, hi);
    const double zthresh = tol * kinetic::scale_on(p, iv);
    const auto roots = kinetic::roots_in(p, iv, tol);
    ++checked;

    for (std::size_t k = 0; k < roots.size(); ++k) {
      CHECK(iv.contains(roots[k]));
      CHECK(std::abs(p.eval(roots[k])) <= zthresh);
      if (k > 0) CHECK(roots[k] - roots[k - 1] >= tol);
    }

    // between consecutive roots the sampled sign never flips; samples inside
    // a root's merge neighborhood prove nothing and are skipped
    int flips_far_from_roots = 0;
    for (const auto& chg :
         testutil::sampled_sign_changes(p, iv, 1000, zthresh)) {
      bool near_root = false;
      for (double r : roots) {
        if (r >= chg.before - 10.0 * tol && r <= chg.after + 10.0 * tol) {
          near_root = true;
          break;
        }
      }
      if (!near_root) ++flips_far_from_roots;
    }
    CHECK(flips_far_from_roots == 0);
  }
  CHECK(checked >= 150);
}
