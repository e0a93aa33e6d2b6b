#include "kinetic/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinetic/errors.hpp"

namespace kinetic {

GridSpec::GridSpec(const IntervalT& horizon, std::size_t samples)
    : horizon_(horizon), samples_(samples) {
  if (samples_ < 2) {
    throw ContractError("grid needs at least two samples");
  }
  cell_ = horizon_.width() / static_cast<double>(samples_ - 1);
}

double GridSpec::time_at(std::size_t k) const noexcept {
  if (k + 1 == samples_) return horizon_.hi();  // land exactly on the end
  return horizon_.lo() + static_cast<double>(k) * cell_;
}

namespace {

struct PointState {
  std::vector<std::vector<double>> pos;     // per object
  std::vector<std::vector<double>> dist;    // pairwise, metric distance
};

double point_distance(const Scenario& scn, const std::vector<double>& p,
                      const std::vector<double>& q) {
  double acc = 0.0;
  if (scn.metric() == Metric::kManhattan) {
    for (std::size_t k = 0; k < p.size(); ++k) acc += std::abs(p[k] - q[k]);
    return acc;
  }
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double d = p[k] - q[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

PointState state_at(const Scenario& scn, double t) {
  const std::size_t n = scn.objects().size();
  PointState st;
  st.pos.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    st.pos[k] = scn.objects()[k].traj().position_at(t);
  }
  st.dist.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      st.dist[i][j] = st.dist[j][i] = point_distance(scn, st.pos[i], st.pos[j]);
    }
  }
  return st;
}

void check_kind_preconditions(const Scenario& scn, EventKind kind,
                              std::size_t focus, bool middle_only) {
  (void)middle_only;
  if (focus >= scn.objects().size()) {
    throw ContractError("focus index " + std::to_string(focus) +
                        " is out of range");
  }
  if (kind == EventKind::kTooFar) {
    for (const MovingObject& obj : scn.objects()) {
      if (!obj.comm_range()) {
        throw ContractError("object " + obj.id() +
                            " has no comm_range; the range condition needs "
                            "one on every object");
      }
    }
  }
  if (kind == EventKind::kThreeAligned) {
    if (scn.metric() != Metric::kManhattan) {
      throw UnsupportedMetricError(
          "the alignment condition is defined for the Manhattan metric only");
    }
    if (scn.objects().size() < 3) {
      throw ContractError("the alignment condition needs at least three "
                          "objects");
    }
  }
}

// margin per partner / triple; <= 0 means that participant fires at t
double pair_margin(const Scenario& scn, EventKind kind, std::size_t focus,
                   std::size_t j, const PointState& st) {
  const double d = st.dist[focus][j];
  if (kind == EventKind::kTooClose) {
    const double thr = std::min(scn.objects()[focus].safe_radius(),
                                scn.objects()[j].safe_radius());
    return d - thr;
  }
  const double thr = std::min(*scn.objects()[focus].comm_range(),
                              *scn.objects()[j].comm_range());
  return thr - d;
}

double triple_margin(const Scenario& scn, std::size_t focus, std::size_t i,
                     std::size_t j, bool middle_only, const PointState& st) {
  const double a = st.dist[focus][i];
  const double b = st.dist[focus][j];
  const double c = st.dist[i][j];
  const double eps = scn.epsilon();
  double best = (a + b - c) - eps;
  if (!middle_only) {
    best = std::min(best, (a + c - b) - eps);
    best = std::min(best, (b + c - a) - eps);
  }
  return best;
}

double margin_at(const Scenario& scn, EventKind kind, std::size_t focus,
                 bool middle_only, const PointState& st) {
  const std::size_t n = scn.objects().size();
  double best = std::numeric_limits<double>::infinity();
  if (kind == EventKind::kThreeAligned) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == focus) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (j == focus) continue;
        best = std::min(best, triple_margin(scn, focus, i, j, middle_only, st));
      }
    }
    return best;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j == focus) continue;
    best = std::min(best, pair_margin(scn, kind, focus, j, st));
  }
  return best;
}

}  // namespace

double event_margin(const Scenario& scn, EventKind kind, double t,
                    std::size_t focus, bool middle_only) {
  check_kind_preconditions(scn, kind, focus, middle_only);
  return margin_at(scn, kind, focus, middle_only, state_at(scn, t));
}

std::optional<OracleEvent> oracle_first_event(const Scenario& scn,
                                              EventKind kind,
                                              const GridSpec& grid,
                                              std::size_t focus,
                                              bool middle_only) {
  check_kind_preconditions(scn, kind, focus, middle_only);
  if (!(grid.horizon() == scn.horizon())) {
    throw ContractError("grid horizon differs from the scenario horizon");
  }
  const std::size_t n = scn.objects().size();
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const double t = grid.time_at(k);
    const PointState st = state_at(scn, t);
    if (margin_at(scn, kind, focus, middle_only, st) > 0.0) continue;

    OracleEvent ev{IntervalT(k == 0 ? t : grid.time_at(k - 1), t), {}, {}};
    if (kind == EventKind::kThreeAligned) {
      for (std::size_t i = 0; i < n; ++i) {
        if (i == focus) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (j == focus) continue;
          if (triple_margin(scn, focus, i, j, middle_only, st) <= 0.0) {
            ev.triples.push_back({focus, i, j});
          }
        }
      }
    } else {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == focus) continue;
        if (pair_margin(scn, kind, focus, j, st) <= 0.0) {
          ev.partners.push_back(j);
        }
      }
    }
    return ev;
  }
  return std::nullopt;
}

double oracle_min_margin(const Scenario& scn, EventKind kind,
                         const GridSpec& grid, std::size_t focus,
                         bool middle_only) {
  check_kind_preconditions(scn, kind, focus, middle_only);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const PointState st = state_at(scn, grid.time_at(k));
    best = std::min(best, margin_at(scn, kind, focus, middle_only, st));
  }
  return best;
}

}  // namespace kinetic
