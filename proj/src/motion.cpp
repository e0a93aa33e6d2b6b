#include "kinetic/motion.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "kinetic/errors.hpp"

namespace kinetic {

Trajectory::Trajectory(std::vector<Polynomial> coords, const IntervalT& horizon)
    : coords_(std::move(coords)), horizon_(horizon) {
  if (coords_.empty()) {
    throw ContractError("trajectory needs at least one coordinate");
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (coords_[k].degree() > kMaxMotionDegree) {
      throw DegreeOverflowError("coordinate " + std::to_string(k) +
                                " has degree " +
                                std::to_string(coords_[k].degree()) +
                                ", above the motion cap " +
                                std::to_string(kMaxMotionDegree));
    }
  }
}

std::vector<double> Trajectory::position_at(double t) const {
  std::vector<double> pos(coords_.size());
  for (std::size_t k = 0; k < coords_.size(); ++k) pos[k] = coords_[k].eval(t);
  return pos;
}

MovingObject::MovingObject(std::string id, Trajectory traj, double safe_radius,
                           std::optional<double> comm_range)
    : id_(std::move(id)),
      traj_(std::move(traj)),
      safe_radius_(safe_radius),
      comm_range_(comm_range) {
  if (id_.empty()) {
    throw ContractError("object id must be nonempty");
  }
  if (!std::isfinite(safe_radius_) || safe_radius_ < 0.0) {
    throw ContractError("object " + id_ +
                        ": safe_radius must be finite and nonnegative");
  }
  if (comm_range_) {
    if (!std::isfinite(*comm_range_) || *comm_range_ <= 0.0) {
      throw ContractError("object " + id_ +
                          ": comm_range must be finite and positive");
    }
    if (*comm_range_ <= safe_radius_) {
      throw ContractError("object " + id_ +
                          ": comm_range must exceed safe_radius");
    }
  }
}

Scenario::Scenario(std::vector<MovingObject> objects, Metric metric,
                   const IntervalT& horizon, double epsilon)
    : objects_(std::move(objects)),
      metric_(metric),
      horizon_(horizon),
      epsilon_(epsilon) {
  if (objects_.size() < 2) {
    throw ContractError("scenario needs at least two objects");
  }
  if (!std::isfinite(epsilon_) || epsilon_ <= 0.0) {
    throw ContractError("epsilon must be finite and positive");
  }
  std::set<std::string> ids;
  const std::size_t dim = objects_.front().traj().dimension();
  for (const MovingObject& obj : objects_) {
    if (!ids.insert(obj.id()).second) {
      throw ContractError("duplicate object id: " + obj.id());
    }
    if (obj.traj().dimension() != dim) {
      throw ContractError("object " + obj.id() + " has dimension " +
                          std::to_string(obj.traj().dimension()) +
                          ", expected " + std::to_string(dim));
    }
    if (!(obj.traj().horizon() == horizon_)) {
      throw ContractError("object " + obj.id() +
                          " does not share the scenario horizon");
    }
  }
}

std::optional<std::size_t> Scenario::index_of(const std::string& id) const {
  for (std::size_t k = 0; k < objects_.size(); ++k) {
    if (objects_[k].id() == id) return k;
  }
  return std::nullopt;
}

Scenario Scenario::with_epsilon(double epsilon) const {
  return Scenario(objects_, metric_, horizon_, epsilon);
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  if (a.dimension() != b.dimension()) {
    throw ContractError("trajectory difference needs equal dimensions");
  }
  if (!(a.horizon() == b.horizon())) {
    throw ContractError("trajectory difference needs one shared horizon");
  }
  std::vector<Polynomial> coords;
  coords.reserve(a.dimension());
  for (std::size_t k = 0; k < a.dimension(); ++k) {
    coords.push_back(a.coords()[k] - b.coords()[k]);
  }
  return Trajectory(std::move(coords), a.horizon());
}

PiecewiseFunction manhattan_distance_fn(const Trajectory& a,
                                        const Trajectory& b, double tol) {
  const Trajectory delta = difference(a, b);
  PiecewiseFunction dist =
      abs_pieces(delta.coords()[0], delta.horizon(), tol);
  for (std::size_t k = 1; k < delta.dimension(); ++k) {
    dist = combine(dist, abs_pieces(delta.coords()[k], delta.horizon(), tol),
                   CombineOp::kAdd, tol);
  }
  return dist;
}

Polynomial euclidean_distance_sq_fn(const Trajectory& a, const Trajectory& b) {
  const Trajectory delta = difference(a, b);
  Polynomial sum;
  for (const Polynomial& c : delta.coords()) {
    sum = sum + c * c;
  }
  return sum;
}

namespace {

// Taylor polynomial (in u) of cos(center + u) resp. sin(center + u),
// truncated at degree n. The k-th derivative cycles through the four
// shifted trig values, so coefficients come straight from two std::cos/sin
// calls.
Polynomial trig_taylor(bool is_sin, double center, int n) {
  const double c = std::cos(center);
  const double s = std::sin(center);
  // derivative cycle at u = 0: sin -> cos -> -sin -> -cos; cos -> -sin ...
  const double cycle_sin[4] = {s, c, -s, -c};
  const double cycle_cos[4] = {c, -s, -c, s};
  std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    const double dk = is_sin ? cycle_sin[k % 4] : cycle_cos[k % 4];
    coeffs[static_cast<std::size_t>(k)] = dk / factorial;
  }
  return Polynomial(std::move(coeffs));
}

// Smallest n with |amp| * w^(n+1) / (n+1)! <= err_bound, or -1 when no
// n <= cap works. Trig derivatives are bounded by 1, so this is the
// Lagrange remainder bound for the truncation.
int required_degree(double amp, double w, double err_bound, int cap) {
  double term = std::abs(amp) * w;  // n = 0 remainder bound
  for (int n = 0; n <= cap; ++n) {
    if (term <= err_bound) return n;
    term *= w / static_cast<double>(n + 2);
  }
  return -1;
}

Polynomial compose_with_linear(const Polynomial& p, const Polynomial& inner) {
  Polynomial out;
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    out = out * inner + Polynomial::constant(*it);
  }
  return out;
}

Polynomial trig_coordinate(bool is_sin, double amp, double offset,
                           const TrigMotionParams& params,
                           const IntervalT& horizon, double err_bound) {
  const double t_mid = horizon.midpoint();
  const double center = params.a * t_mid + params.theta0;
  const double w = std::abs(params.a) * 0.5 * horizon.width();
  const int n = required_degree(amp, w, err_bound, kMaxMotionDegree);
  if (n < 0) {
    throw ApproximationInfeasibleError(
        "no polynomial of degree up to " + std::to_string(kMaxMotionDegree) +
        " meets error bound " + std::to_string(err_bound) +
        " on this horizon; shrink the horizon or relax the bound");
  }
  const Polynomial in_u = trig_taylor(is_sin, center, n);
  // u = a * (t - t_mid)
  const Polynomial u_of_t{-params.a * t_mid, params.a};
  return Polynomial::constant(amp) * compose_with_linear(in_u, u_of_t) +
         Polynomial::constant(offset);
}

}  // namespace

Trajectory approximate_trig_motion(const TrigMotionParams& params,
                                   const IntervalT& horizon,
                                   double err_bound) {
  for (double v : {params.R1, params.R2, params.a, params.theta0, params.x0,
                   params.y0}) {
    if (!std::isfinite(v)) {
      throw ContractError("trig motion parameters must be finite");
    }
  }
  if (!std::isfinite(err_bound) || err_bound <= 0.0) {
    throw ContractError("err_bound must be finite and positive");
  }
  std::vector<Polynomial> coords;
  coords.push_back(trig_coordinate(false, params.R1, params.x0, params,
                                   horizon, err_bound));
  coords.push_back(trig_coordinate(true, params.R2, params.y0, params, horizon,
                                   err_bound));
  return Trajectory(std::move(coords), horizon);
}

}  // namespace kinetic
