#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kinetic/piecewise.hpp"
#include "kinetic/polynomial.hpp"

namespace kinetic {

// Cap on the degree of a single coordinate polynomial of a trajectory; the
// working cap in the poly layer is looser so that products of legal
// coordinates still fit.
inline constexpr int kMaxMotionDegree = 24;

inline constexpr double kDefaultTrigErrBound = 1e-6;

enum class Metric { kManhattan, kEuclidean };

// Which first-event question is being asked. Shared vocabulary between the
// analytic solvers and the sampling oracle.
enum class EventKind { kTooClose, kTooFar, kThreeAligned };

// Point-object motion: one polynomial per coordinate, all live on the same
// closed horizon.
class Trajectory {
 public:
  Trajectory(std::vector<Polynomial> coords, const IntervalT& horizon);

  std::size_t dimension() const noexcept { return coords_.size(); }
  const std::vector<Polynomial>& coords() const noexcept { return coords_; }
  const IntervalT& horizon() const noexcept { return horizon_; }

  // Raw position, one coordinate eval each; no piecewise machinery involved.
  std::vector<double> position_at(double t) const;

 private:
  std::vector<Polynomial> coords_;
  IntervalT horizon_;
};

class MovingObject {
 public:
  MovingObject(std::string id, Trajectory traj, double safe_radius,
               std::optional<double> comm_range = std::nullopt);

  const std::string& id() const noexcept { return id_; }
  const Trajectory& traj() const noexcept { return traj_; }
  double safe_radius() const noexcept { return safe_radius_; }
  const std::optional<double>& comm_range() const noexcept {
    return comm_range_;
  }

 private:
  std::string id_;
  Trajectory traj_;
  double safe_radius_;
  std::optional<double> comm_range_;
};

// A full query instance: at least two objects of one dimension on one
// horizon, unique ids, a metric, and the alignment slack epsilon.
class Scenario {
 public:
  Scenario(std::vector<MovingObject> objects, Metric metric,
           const IntervalT& horizon, double epsilon);

  const std::vector<MovingObject>& objects() const noexcept {
    return objects_;
  }
  Metric metric() const noexcept { return metric_; }
  const IntervalT& horizon() const noexcept { return horizon_; }
  double epsilon() const noexcept { return epsilon_; }
  std::size_t dimension() const noexcept {
    return objects_.front().traj().dimension();
  }

  std::optional<std::size_t> index_of(const std::string& id) const;

  Scenario with_epsilon(double epsilon) const;

 private:
  std::vector<MovingObject> objects_;
  Metric metric_;
  IntervalT horizon_;
  double epsilon_;
};

// Coordinate-wise a - b on their shared horizon.
Trajectory difference(const Trajectory& a, const Trajectory& b);

// Manhattan separation of two trajectories as a piecewise-polynomial
// function of time: the per-coordinate absolute differences folded together
// with pointwise addition. With coordinate degree at most s in dimension d
// the result has at most d*s switchpoints, hence at most d*s + 1 pieces.
PiecewiseFunction manhattan_distance_fn(const Trajectory& a,
                                        const Trajectory& b,
                                        double tol = kDefaultTol);

// Squared Euclidean separation, a single polynomial of degree at most 2s.
// Kept squared so downstream threshold queries stay polynomial.
Polynomial euclidean_distance_sq_fn(const Trajectory& a, const Trajectory& b);

// Circular/elliptic motion x = R1*cos(a*t + theta0) + x0,
// y = R2*sin(a*t + theta0) + y0.
struct TrigMotionParams {
  double R1;
  double R2;
  double a;
  double theta0;
  double x0;
  double y0;
};

// Degree-minimal Taylor replacement of the trig motion: each coordinate is
// expanded about the phase at the horizon midpoint and truncated at the
// smallest degree whose Lagrange remainder over the horizon is at most
// err_bound, so the polynomial stays within err_bound of the true
// coordinate everywhere on the horizon. Throws
// ApproximationInfeasibleError when no degree within the motion cap
// suffices.
Trajectory approximate_trig_motion(const TrigMotionParams& params,
                                   const IntervalT& horizon,
                                   double err_bound = kDefaultTrigErrBound);

}  // namespace kinetic
