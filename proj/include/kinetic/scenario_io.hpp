#pragma once

#include <optional>
#include <string>

#include "kinetic/motion.hpp"
#include "kinetic/oracle.hpp"
#include "kinetic/solvers.hpp"

namespace kinetic {

// Optional per-query answers a scenario file may carry; the oracle-check
// command compares against them when present. The inner optional
// distinguishes "expected no event" (null in the file) from an expected
// time.
struct ExpectedResults {
  std::optional<std::optional<double>> too_close;
  std::optional<std::optional<double>> too_far;
  std::optional<std::optional<double>> three_aligned;

  const std::optional<std::optional<double>>& for_kind(EventKind kind) const;
};

struct ScenarioDocument {
  Scenario scenario;
  ExpectedResults expected;
};

// Parses and validates a scenario document. Trig-motion entries are
// expanded into polynomial trajectories right here, appended after the
// plain objects in file order. Errors are ContractError with the offending
// field path in the message.
ScenarioDocument parse_scenario_text(const std::string& text);
ScenarioDocument load_scenario(const std::string& path);

// Query parameters echoed into a report. Execution details that cannot
// change the answer (thread count, wall time) stay out so the document
// bytes depend on the query alone.
struct ReportParams {
  std::string focus_id;
  Metric metric = Metric::kManhattan;
  double tolerance = kDefaultTol;
  // three-aligned only
  std::optional<double> epsilon;
  std::optional<bool> middle_only;
};

std::string event_kind_name(EventKind kind);
std::string metric_name(Metric metric);
std::string defect_name(DefectExpr defect);

// Deterministic JSON text for a solver answer: fixed field order, numbers
// rounded to 12 significant digits, ids resolved through the scenario. Ends
// with a newline. Byte-stable for identical inputs by construction.
std::string format_report(const EventReport& report, const Scenario& scn,
                          const ReportParams& params);

// Piece listing plus a CSV trace of the pair separation on a uniform grid:
// '#'-prefixed header lines carry the pieces (interval and coefficients),
// then a t,value CSV block follows. Euclidean scenarios trace the squared
// distance, which is what the analysis works with.
std::string format_pieces_trace(const Scenario& scn, std::size_t first,
                                std::size_t second, double tol,
                                std::size_t trace_samples = 1024);

// Solver-vs-oracle comparison document. PASS when both agree there is no
// event, or the analytic time lands inside the sampled bracket stretched by
// one grid cell; an expected answer from the file, when present, must match
// the solver as well.
struct OracleCheckResult {
  bool pass = false;
  std::string text;
};

OracleCheckResult format_oracle_check(const EventReport& report,
                                      const std::optional<OracleEvent>& oracle,
                                      const GridSpec& grid,
                                      const ReportParams& params,
                                      const ScenarioDocument& doc);

}  // namespace kinetic
