#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "kinetic/motion.hpp"

namespace kinetic {

// Uniform sampling grid over a horizon, endpoints included.
class GridSpec {
 public:
  static constexpr std::size_t kDefaultSamples = 65536;

  GridSpec(const IntervalT& horizon, std::size_t samples = kDefaultSamples);

  const IntervalT& horizon() const noexcept { return horizon_; }
  std::size_t samples() const noexcept { return samples_; }
  double cell_width() const noexcept { return cell_; }
  double time_at(std::size_t k) const noexcept;

 private:
  IntervalT horizon_;
  std::size_t samples_;
  double cell_;
};

// Grid evaluation of anything callable on a time. Plumbing shared by tests
// and the checker below.
template <typename F>
std::vector<TimeValue> sample_fn(const F& f, const GridSpec& grid) {
  std::vector<TimeValue> out;
  out.reserve(grid.samples());
  for (std::size_t k = 0; k < grid.samples(); ++k) {
    const double t = grid.time_at(k);
    out.push_back(TimeValue{t, f(t)});
  }
  return out;
}

// Where the sampled event condition first becomes true: the grid cell
// between the last false sample and the first true one (zero-width when the
// condition already holds at the start). partners/triples list what fired
// at the true sample.
struct OracleEvent {
  IntervalT bracket;
  std::vector<std::size_t> partners;
  std::vector<std::array<std::size_t, 3>> triples;
};

// Signed clearance of the event condition at one instant, computed with
// plain per-point arithmetic (coordinate evals, abs/square sums); the
// condition holds exactly when the margin is <= 0. This path is the
// independent check on the analytic solvers, so it must never touch the
// piecewise or root-finding machinery.
double event_margin(const Scenario& scn, EventKind kind, double t,
                    std::size_t focus = 0, bool middle_only = false);

// First grid sample whose margin is <= 0, reported as a bracketing cell;
// absent when the condition never fires on the grid.
std::optional<OracleEvent> oracle_first_event(const Scenario& scn,
                                              EventKind kind,
                                              const GridSpec& grid,
                                              std::size_t focus = 0,
                                              bool middle_only = false);

// Smallest margin seen across the whole grid; how close the scenario came
// to firing (negative when it did fire somewhere).
double oracle_min_margin(const Scenario& scn, EventKind kind,
                         const GridSpec& grid, std::size_t focus = 0,
                         bool middle_only = false);

}  // namespace kinetic
