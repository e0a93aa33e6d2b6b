#include "kinetic/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "kinetic/errors.hpp"
#include "kinetic/piecewise.hpp"

namespace kinetic {

namespace {

// Runs fn(k) for k in [0, count) across the requested number of threads in
// contiguous chunks. fn must not throw; callers park exceptions per index.
template <typename Fn>
void parallel_for_index(std::size_t count, int threads, Fn&& fn) {
  const std::size_t want =
      std::min<std::size_t>(count, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (want <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(want);
  for (std::size_t w = 0; w < want; ++w) {
    const std::size_t begin = count * w / want;
    const std::size_t end = count * (w + 1) / want;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t k = begin; k < end; ++k) fn(k);
    });
  }
  for (std::thread& t : pool) t.join();
}

void check_focus(const Scenario& scn, std::size_t focus) {
  if (focus >= scn.objects().size()) {
    throw ContractError("focus index " + std::to_string(focus) +
                        " is out of range");
  }
}

NumericalError annotate_pair(const NumericalError& e, const Scenario& scn,
                             std::size_t focus, std::size_t j) {
  return NumericalError("pair (" + scn.objects()[focus].id() + ", " +
                            scn.objects()[j].id() + "): " + e.what(),
                        e.interval_lo(), e.interval_hi());
}

// First time the separation of focus and j reaches the threshold from the
// relevant side. Euclidean scenarios compare the squared distance with the
// squared threshold so everything stays polynomial.
std::optional<double> pair_event_time(const Scenario& scn, std::size_t focus,
                                      std::size_t j, double threshold,
                                      bool want_leq, double tol) {
  const Trajectory& a = scn.objects()[focus].traj();
  const Trajectory& b = scn.objects()[j].traj();
  if (scn.metric() == Metric::kManhattan) {
    const PiecewiseFunction dist = manhattan_distance_fn(a, b, tol);
    return want_leq ? first_time_leq(dist, threshold, tol)
                    : first_time_geq(dist, threshold, tol);
  }
  const PiecewiseFunction dist_sq = PiecewiseFunction::single(
      euclidean_distance_sq_fn(a, b), scn.horizon());
  const double thr_sq = threshold * threshold;
  return want_leq ? first_time_leq(dist_sq, thr_sq, tol)
                  : first_time_geq(dist_sq, thr_sq, tol);
}

// Shared skeleton of the two pair queries: map every partner to its event
// time (possibly in parallel), then reduce strictly in index order so the
// minimum and its tie set never depend on scheduling.
EventReport pair_query(const Scenario& scn, std::size_t focus,
                       const SolveOptions& opts, EventKind kind,
                       bool want_leq,
                       const std::vector<double>& thresholds) {
  const std::size_t n = scn.objects().size();
  std::vector<std::optional<double>> times(n);
  std::vector<std::exception_ptr> errors(n);

  std::vector<std::size_t> partners;
  partners.reserve(n - 1);
  for (std::size_t j = 0; j < n; ++j) {
    if (j != focus) partners.push_back(j);
  }

  parallel_for_index(partners.size(), opts.threads, [&](std::size_t k) {
    const std::size_t j = partners[k];
    try {
      times[j] = pair_event_time(scn, focus, j, thresholds[j], want_leq,
                                 opts.tol);
    } catch (const NumericalError& e) {
      errors[j] = std::make_exception_ptr(annotate_pair(e, scn, focus, j));
    } catch (...) {
      errors[j] = std::current_exception();
    }
  });

  EventReport report{kind, std::nullopt, {}, {}};
  for (std::size_t j : partners) {
    if (errors[j]) std::rethrow_exception(errors[j]);
    if (!times[j]) continue;
    if (!report.min_time || *times[j] < *report.min_time) {
      report.min_time = times[j];
      report.partners = {j};
    } else if (*times[j] == *report.min_time) {
      report.partners.push_back(j);
    }
  }
  return report;
}

}  // namespace

EventReport too_close(const Scenario& scn, std::size_t focus,
                      const SolveOptions& opts) {
  check_focus(scn, focus);
  const std::size_t n = scn.objects().size();
  std::vector<double> thresholds(n, 0.0);
  const double g_focus = scn.objects()[focus].safe_radius();
  for (std::size_t j = 0; j < n; ++j) {
    thresholds[j] = std::min(g_focus, scn.objects()[j].safe_radius());
  }
  return pair_query(scn, focus, opts, EventKind::kTooClose, /*want_leq=*/true,
                    thresholds);
}

EventReport too_far(const Scenario& scn, std::size_t focus,
                    const SolveOptions& opts) {
  check_focus(scn, focus);
  const std::size_t n = scn.objects().size();
  for (const MovingObject& obj : scn.objects()) {
    if (!obj.comm_range()) {
      throw ContractError("object " + obj.id() +
                          " has no comm_range; the range query needs one on "
                          "every object");
    }
  }
  std::vector<double> thresholds(n, 0.0);
  const double r_focus = *scn.objects()[focus].comm_range();
  for (std::size_t j = 0; j < n; ++j) {
    thresholds[j] = std::min(r_focus, *scn.objects()[j].comm_range());
  }
  return pair_query(scn, focus, opts, EventKind::kTooFar, /*want_leq=*/false,
                    thresholds);
}

namespace {

double manhattan_at(const std::vector<double>& p, const std::vector<double>& q) {
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) sum += std::abs(p[k] - q[k]);
  return sum;
}

struct TripleCandidate {
  std::optional<double> time;
  std::vector<AlignmentWitness> entries;
  bool hit_start = false;  // candidate equal to the horizon start: stop scanning
  std::exception_ptr error;
};

std::size_t middle_of(DefectExpr defect,
                      const std::array<std::size_t, 3>& triple) {
  switch (defect) {
    case DefectExpr::kAPlusBMinusC:
      return triple[0];
    case DefectExpr::kAPlusCMinusB:
      return triple[1];
    case DefectExpr::kBPlusCMinusA:
      return triple[2];
  }
  throw ContractError("unknown defect expression");
}

void merge_candidate(EventReport& report, const TripleCandidate& local) {
  if (!local.time) return;
  if (!report.min_time || *local.time < *report.min_time) {
    report.min_time = local.time;
    report.triples = local.entries;
  } else if (*local.time == *report.min_time) {
    report.triples.insert(report.triples.end(), local.entries.begin(),
                          local.entries.end());
  }
}

}  // namespace

EventReport three_aligned(const Scenario& scn, std::size_t focus,
                          const SolveOptions& opts) {
  check_focus(scn, focus);
  if (scn.metric() != Metric::kManhattan) {
    throw UnsupportedMetricError(
        "the alignment query is defined for the Manhattan metric only");
  }
  const std::size_t n = scn.objects().size();
  if (n < 3) {
    throw ContractError("the alignment query needs at least three objects");
  }
  const double eps = scn.epsilon();
  const double t0 = scn.horizon().lo();
  const double tol = opts.tol;

  std::vector<std::size_t> others;
  others.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    if (k != focus) others.push_back(k);
  }

  const std::size_t defect_count = opts.middle_only ? 1 : 3;
  const DefectExpr defect_order[3] = {DefectExpr::kAPlusBMinusC,
                                      DefectExpr::kAPlusCMinusB,
                                      DefectExpr::kBPlusCMinusA};

  EventReport report{EventKind::kThreeAligned, std::nullopt, {}, {}};

  // Start-time pre-pass over all pairs, raw arithmetic only: if any
  // considered defect is already within epsilon at the horizon start the
  // answer is the start itself.
  std::vector<std::vector<double>> pos0(n);
  for (std::size_t k = 0; k < n; ++k) {
    pos0[k] = scn.objects()[k].traj().position_at(t0);
  }
  for (std::size_t ii = 0; ii < others.size(); ++ii) {
    for (std::size_t jj = ii + 1; jj < others.size(); ++jj) {
      const std::size_t i = others[ii];
      const std::size_t j = others[jj];
      const double a0 = manhattan_at(pos0[focus], pos0[i]);
      const double b0 = manhattan_at(pos0[focus], pos0[j]);
      const double c0 = manhattan_at(pos0[i], pos0[j]);
      const double defects[3] = {a0 + b0 - c0, a0 + c0 - b0, b0 + c0 - a0};
      for (std::size_t d = 0; d < defect_count; ++d) {
        if (defects[d] <= eps) {
          const std::array<std::size_t, 3> triple{focus, i, j};
          report.triples.push_back(AlignmentWitness{
              triple, defect_order[d], middle_of(defect_order[d], triple)});
          break;
        }
      }
    }
  }
  if (!report.triples.empty()) {
    report.min_time = t0;
    return report;
  }

  // Distances from the focus are shared across all pairs; build them once.
  std::vector<std::optional<PiecewiseFunction>> to_focus(n);
  {
    std::vector<std::exception_ptr> errors(n);
    parallel_for_index(others.size(), opts.threads, [&](std::size_t k) {
      const std::size_t i = others[k];
      try {
        to_focus[i] = manhattan_distance_fn(scn.objects()[focus].traj(),
                                            scn.objects()[i].traj(), tol);
      } catch (const NumericalError& e) {
        errors[i] = std::make_exception_ptr(annotate_pair(e, scn, focus, i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
    for (std::size_t i : others) {
      if (errors[i]) std::rethrow_exception(errors[i]);
    }
  }

  // Per first index i, scan partners j in order; each worker reproduces the
  // sequential tie/stop behavior locally and the merge replays workers in
  // index order, so thread count never shows in the answer.
  std::vector<TripleCandidate> locals(others.size());
  parallel_for_index(others.size(), opts.threads, [&](std::size_t ii) {
    TripleCandidate& local = locals[ii];
    const std::size_t i = others[ii];
    for (std::size_t jj = ii + 1; jj < others.size(); ++jj) {
      const std::size_t j = others[jj];
      const std::array<std::size_t, 3> triple{focus, i, j};
      try {
        const PiecewiseFunction& a = *to_focus[i];
        const PiecewiseFunction& b = *to_focus[j];
        const PiecewiseFunction c = manhattan_distance_fn(
            scn.objects()[i].traj(), scn.objects()[j].traj(), tol);

        std::optional<double> best;
        DefectExpr best_defect = DefectExpr::kAPlusBMinusC;

        // degenerate coincidence at the start: some side is zero, the
        // triple is flat already
        if (std::abs(a.eval(t0)) <= tol || std::abs(b.eval(t0)) <= tol ||
            std::abs(c.eval(t0)) <= tol) {
          best = t0;
        } else {
          static const std::array<std::array<int, 3>, 3> kSigns{
              {{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}}};
          for (std::size_t d = 0; d < defect_count; ++d) {
            const PiecewiseFunction defect =
                combine3(a, b, c, kSigns[d], tol);
            const std::optional<double> t = first_time_leq(defect, eps, tol);
            if (t && (!best || *t < *best)) {
              best = t;
              best_defect = defect_order[d];
            }
          }
        }

        if (best) {
          if (!local.time || *best < *local.time) {
            local.time = best;
            local.entries = {AlignmentWitness{triple, best_defect,
                                              middle_of(best_defect, triple)}};
          } else if (*best == *local.time) {
            local.entries.push_back(AlignmentWitness{
                triple, best_defect, middle_of(best_defect, triple)});
          }
          if (*best == t0) {
            local.hit_start = true;
            break;
          }
        }
      } catch (const NumericalError& e) {
        local.error = std::make_exception_ptr(NumericalError(
            "triple (" + scn.objects()[focus].id() + ", " +
                scn.objects()[i].id() + ", " + scn.objects()[j].id() +
                "): " + e.what(),
            e.interval_lo(), e.interval_hi()));
        break;
      } catch (...) {
        local.error = std::current_exception();
        break;
      }
    }
  });

  for (const TripleCandidate& local : locals) {
    if (local.error) std::rethrow_exception(local.error);
    merge_candidate(report, local);
    if (report.min_time && *report.min_time == t0) break;
  }
  return report;
}

}  // namespace kinetic
