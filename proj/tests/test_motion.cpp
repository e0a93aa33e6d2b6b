#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "kinetic/errors.hpp"
#include "kinetic/motion.hpp"
#include "test_util.hpp"

using kinetic::IntervalT;
using kinetic::Metric;
using kinetic::MovingObject;
using kinetic::Polynomial;
using kinetic::Scenario;
using kinetic::Trajectory;

namespace {

double raw_manhattan(const Trajectory& a, const Trajectory& b, double t) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    sum += std::abs(a.coords()[k].eval(t) - b.coords()[k].eval(t));
  }
  return sum;
}

double raw_euclidean_sq(const Trajectory& a, const Trajectory& b, double t) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    const double d = a.coords()[k].eval(t) - b.coords()[k].eval(t);
    sum += d * d;
  }
  return sum;
}

}  // namespace

TEST_CASE("trajectory construction and validation") {
  const IntervalT horizon(0.0, 2.0);
  const Trajectory traj({Polynomial{1.0, 2.0}, Polynomial{0.0, 0.0, 1.0}},
                        horizon);
  CHECK(traj.dimension() == 2);
  const auto pos = traj.position_at(2.0);
  REQUIRE(pos.size() == 2);
  CHECK(pos[0] == 5.0);
  CHECK(pos[1] == 4.0);

  CHECK_THROWS_AS(Trajectory({}, horizon), kinetic::ContractError);

  std::vector<double> too_steep(kinetic::kMaxMotionDegree + 2, 0.0);
  too_steep.back() = 1.0;
  CHECK_THROWS_AS(Trajectory({Polynomial(too_steep)}, horizon),
                  kinetic::DegreeOverflowError);
}

TEST_CASE("scenario validation") {
  const IntervalT horizon(0.0, 1.0);
  const Trajectory t1({Polynomial{0.0}}, horizon);
  const Trajectory t2({Polynomial{5.0}}, horizon);

  SUBCASE("well formed") {
    const Scenario scn({MovingObject("a", t1, 1.0), MovingObject("b", t2, 1.0)},
                       Metric::kManhattan, horizon, 1e-3);
    CHECK(scn.dimension() == 1);
    CHECK(scn.index_of("b") == 1);
    CHECK_FALSE(scn.index_of("zz").has_value());
    CHECK(scn.with_epsilon(0.5).epsilon() == 0.5);
  }

  SUBCASE("fewer than two objects") {
    CHECK_THROWS_AS(Scenario({MovingObject("a", t1, 1.0)}, Metric::kManhattan,
                             horizon, 1e-3),
                    kinetic::ContractError);
  }

  SUBCASE("duplicate ids") {
    CHECK_THROWS_AS(
        Scenario({MovingObject("a", t1, 1.0), MovingObject("a", t2, 1.0)},
                 Metric::kManhattan, horizon, 1e-3),
        kinetic::ContractError);
  }

  SUBCASE("mixed dimensions") {
    const Trajectory flat({Polynomial{0.0}, Polynomial{0.0}}, horizon);
    CHECK_THROWS_AS(
        Scenario({MovingObject("a", t1, 1.0), MovingObject("b", flat, 1.0)},
                 Metric::kManhattan, horizon, 1e-3),
        kinetic::ContractError);
  }

  SUBCASE("negative radius") {
    CHECK_THROWS_AS(
        Scenario({MovingObject("a", t1, -1.0), MovingObject("b", t2, 1.0)},
                 Metric::kManhattan, horizon, 1e-3),
        kinetic::ContractError);
  }
}

TEST_CASE("difference subtracts coordinates") {
  const IntervalT horizon(0.0, 3.0);
  const Trajectory a({Polynomial{2.0}, Polynomial{3.0, -1.0}}, horizon);
  const Trajectory b({Polynomial{0.0}, Polynomial{0.0}}, horizon);
  const auto d = kinetic::difference(a, b);
  CHECK(kinetic::approx_equal(d.coords()[0], Polynomial{2.0}));
  CHECK(kinetic::approx_equal(d.coords()[1], Polynomial{3.0, -1.0}));

  const Trajectory other_dim({Polynomial{0.0}}, horizon);
  CHECK_THROWS_AS(kinetic::difference(a, other_dim), kinetic::ContractError);
}

TEST_CASE("manhattan separation of the worked pair") {
  // object at (2, 3-t) against a fixed origin on [0,6]
  const IntervalT horizon(0.0, 6.0);
  const Trajectory mover({Polynomial{2.0}, Polynomial{3.0, -1.0}}, horizon);
  const Trajectory origin({Polynomial{0.0}, Polynomial{0.0}}, horizon);
  const auto F = kinetic::manhattan_distance_fn(mover, origin);
  F.check_invariants();
  REQUIRE(F.pieces().size() == 2);
  CHECK(kinetic::approx_equal(F.pieces()[0].func, Polynomial{5.0, -1.0}));
  CHECK(kinetic::approx_equal(F.pieces()[1].func, Polynomial{-1.0, 1.0}));
  const auto sw = F.switchpoints();
  REQUIRE(sw.size() == 1);
  CHECK(sw[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(F.eval(0.0) == doctest::Approx(5.0));
  CHECK(F.eval(6.0) == doctest::Approx(5.0));
}

TEST_CASE("manhattan piece counts respect the d*s bound") {
  auto rng = testutil::make_rng(0xD51u);
  const IntervalT horizon(0.0, 5.0);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t d = static_cast<std::size_t>(testutil::uniform_int(rng, 1, 3));
    const int s = testutil::uniform_int(rng, 1, 3);
    const auto a = testutil::random_trajectory(rng, d, s, horizon);
    const auto b = testutil::random_trajectory(rng, d, s, horizon);
    const auto F = kinetic::manhattan_distance_fn(a, b);
    F.check_invariants();
    CHECK(F.switchpoint_count() <= d * static_cast<std::size_t>(s));
    CHECK(F.pieces().size() <= d * static_cast<std::size_t>(s) + 1);
    for (int k = 0; k <= 200; ++k) {
      const double t = horizon.lo() + horizon.width() * k / 200.0;
      const double want = raw_manhattan(a, b, t);
      CHECK(F.eval(t) ==
            doctest::Approx(want).epsilon(1e-9).scale(std::abs(want) + 1.0));
    }
  }
}

TEST_CASE("squared euclidean separation stays polynomial") {
  const IntervalT horizon(0.0, 4.0);
  const Trajectory a({Polynomial{0.0, 1.0}, Polynomial{1.0}}, horizon);
  const Trajectory b({Polynomial{0.0}, Polynomial{0.0}}, horizon);
  const auto p = kinetic::euclidean_distance_sq_fn(a, b);
  // t^2 + 1
  CHECK(kinetic::approx_equal(p, Polynomial{1.0, 0.0, 1.0}));

  auto rng = testutil::make_rng(0xE5C1u);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t d = static_cast<std::size_t>(testutil::uniform_int(rng, 1, 3));
    const int s = testutil::uniform_int(rng, 1, 3);
    const auto x = testutil::random_trajectory(rng, d, s, horizon);
    const auto y = testutil::random_trajectory(rng, d, s, horizon);
    const auto q = kinetic::euclidean_distance_sq_fn(x, y);
    CHECK(q.degree() <= 2 * s);
    for (int k = 0; k <= 150; ++k) {
      const double t = horizon.lo() + horizon.width() * k / 150.0;
      const double want = raw_euclidean_sq(x, y, t);
      CHECK(q.eval(t) ==
            doctest::Approx(want).epsilon(1e-9).scale(std::abs(want) + 1.0));
    }
  }
}

TEST_CASE("trig replacement stays inside the error bound") {
  auto rng = testutil::make_rng(0x7121u);
  const IntervalT horizon(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const kinetic::TrigMotionParams params{
        testutil::uniform(rng, 0.5, 3.0),  testutil::uniform(rng, 0.5, 3.0),
        testutil::uniform(rng, -6.0, 6.0), testutil::uniform(rng, -3.1, 3.1),
        testutil::uniform(rng, -5.0, 5.0), testutil::uniform(rng, -5.0, 5.0)};
    const auto traj =
        kinetic::approximate_trig_motion(params, horizon, 1e-6);
    REQUIRE(traj.dimension() == 2);
    double worst = 0.0;
    for (int k = 0; k <= 2000; ++k) {
      const double t = horizon.lo() + horizon.width() * k / 2000.0;
      const double phase = params.a * t + params.theta0;
      const double x = params.R1 * std::cos(phase) + params.x0;
      const double y = params.R2 * std::sin(phase) + params.y0;
      worst = std::max(worst, std::abs(traj.coords()[0].eval(t) - x));
      worst = std::max(worst, std::abs(traj.coords()[1].eval(t) - y));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("trig replacement refuses an unreachable bound") {
  const kinetic::TrigMotionParams params{1.0, 1.0, 60.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(
      kinetic::approximate_trig_motion(params, IntervalT(0.0, 1.0), 1e-6),
      kinetic::ApproximationInfeasibleError);
}
