#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "kinetic/motion.hpp"

namespace kinetic {

// The three Manhattan defect expressions whose vanishing (within epsilon)
// makes a triple approximately collinear; which one fires tells which
// object sits in the middle. With a = d(focus, i), b = d(focus, j),
// c = d(i, j): a+b-c small puts focus in the middle, a+c-b puts i there,
// b+c-a puts j there.
enum class DefectExpr { kAPlusBMinusC, kAPlusCMinusB, kBPlusCMinusA };

struct AlignmentWitness {
  std::array<std::size_t, 3> triple;  // object indices: focus, i, j
  DefectExpr defect;
  std::size_t middle;                 // index of the middle object
};

// Answer to a first-event query. min_time is absent when the event never
// happens inside the horizon; participants/triples are nonempty exactly
// when it is present. Pair queries fill partners with every partner index
// achieving the minimum (ties share it); the triple query fills triples,
// first-found first, and the first entry is the witness.
struct EventReport {
  EventKind kind;
  std::optional<double> min_time;
  std::vector<std::size_t> partners;
  std::vector<AlignmentWitness> triples;
};

struct SolveOptions {
  double tol = kDefaultTol;
  // Worker threads for the per-partner / per-triple scans. Any value
  // produces byte-identical results; the reduction always replays in index
  // order.
  int threads = 1;
  // Restrict the triple query to the focus-in-the-middle defect.
  bool middle_only = false;
};

// First time some partner j gets within min(safe_radius_focus,
// safe_radius_j) of the focus object, under the scenario metric. Linear in
// the number of objects for bounded dimension and degree.
EventReport too_close(const Scenario& scn, std::size_t focus = 0,
                      const SolveOptions& opts = {});

// First time some partner drifts to or beyond min(comm_range_focus,
// comm_range_j); every object must carry a comm_range.
EventReport too_far(const Scenario& scn, std::size_t focus = 0,
                    const SolveOptions& opts = {});

// First time some triple (focus, i, j) becomes epsilon-approximately
// collinear under the Manhattan metric: a start-time check over all pairs,
// then per pair the earliest time a considered defect expression equals
// epsilon. Quadratic in the number of objects. Throws
// UnsupportedMetricError for Euclidean scenarios.
EventReport three_aligned(const Scenario& scn, std::size_t focus = 0,
                          const SolveOptions& opts = {});

}  // namespace kinetic
