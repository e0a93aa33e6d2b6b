#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kinetic/errors.hpp"
#include "kinetic/oracle.hpp"
#include "kinetic/scenario_io.hpp"
#include "kinetic/solvers.hpp"

namespace {

constexpr int kExitEvent = 0;
constexpr int kExitNoEvent = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

struct CommonArgs {
  std::string scenario_path;
  std::string focus_id;
  double tolerance = kinetic::kDefaultTol;
  int threads = 1;
  std::string output_path;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("scenario,--scenario", args->scenario_path,
                  "scenario JSON file")
      ->required();
  cmd->add_option("--focus", args->focus_id,
                  "focus object id (default: first object in the file)");
  cmd->add_option("--tolerance", args->tolerance,
                  "root isolation tolerance in time units");
  cmd->add_option("--threads", args->threads,
                  "worker threads; never changes the output bytes");
  cmd->add_option("--output", args->output_path,
                  "write the report here instead of stdout");
}

std::size_t resolve_focus(const kinetic::Scenario& scn,
                          const std::string& focus_id) {
  if (focus_id.empty()) return 0;
  const auto idx = scn.index_of(focus_id);
  if (!idx) {
    throw kinetic::ContractError("unknown focus object id: " + focus_id);
  }
  return *idx;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) {
    throw kinetic::ContractError("cannot write output file: " + output_path);
  }
  out << text;
}

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  ~WallTimer() {
    const auto stop = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start_).count();
    // timing is a diagnostic, not part of the report document, so that
    // report bytes stay identical across runs
    std::fprintf(stderr, "# wall_time_ms %.3f\n", ms);
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

kinetic::EventReport run_solver(kinetic::EventKind kind,
                                const kinetic::Scenario& scn,
                                std::size_t focus,
                                const kinetic::SolveOptions& opts) {
  switch (kind) {
    case kinetic::EventKind::kTooClose:
      return kinetic::too_close(scn, focus, opts);
    case kinetic::EventKind::kTooFar:
      return kinetic::too_far(scn, focus, opts);
    case kinetic::EventKind::kThreeAligned:
      return kinetic::three_aligned(scn, focus, opts);
  }
  throw kinetic::ContractError("unknown event kind");
}

int run_event_command(kinetic::EventKind kind, const CommonArgs& args,
                      const std::optional<double>& epsilon_override,
                      bool middle_only) {
  kinetic::ScenarioDocument doc = kinetic::load_scenario(args.scenario_path);
  kinetic::Scenario scn = epsilon_override
                              ? doc.scenario.with_epsilon(*epsilon_override)
                              : doc.scenario;
  const std::size_t focus = resolve_focus(scn, args.focus_id);

  kinetic::SolveOptions opts;
  opts.tol = args.tolerance;
  opts.threads = args.threads;
  opts.middle_only = middle_only;

  kinetic::EventReport report;
  {
    WallTimer timer;
    report = run_solver(kind, scn, focus, opts);
  }

  kinetic::ReportParams params;
  params.focus_id = scn.objects()[focus].id();
  params.metric = scn.metric();
  params.tolerance = args.tolerance;
  if (kind == kinetic::EventKind::kThreeAligned) {
    params.epsilon = scn.epsilon();
    params.middle_only = middle_only;
  }

  emit(kinetic::format_report(report, scn, params), args.output_path);
  return report.min_time ? kExitEvent : kExitNoEvent;
}

int run_pieces(const CommonArgs& args, const std::string& pair_spec) {
  kinetic::ScenarioDocument doc = kinetic::load_scenario(args.scenario_path);
  const kinetic::Scenario& scn = doc.scenario;

  const auto comma = pair_spec.find(',');
  if (comma == std::string::npos || comma == 0 ||
      comma + 1 == pair_spec.size()) {
    throw kinetic::ContractError("--pair wants two ids as A,B");
  }
  const std::string first_id = pair_spec.substr(0, comma);
  const std::string second_id = pair_spec.substr(comma + 1);
  const auto first = scn.index_of(first_id);
  if (!first) {
    throw kinetic::ContractError("unknown object id: " + first_id);
  }
  const auto second = scn.index_of(second_id);
  if (!second) {
    throw kinetic::ContractError("unknown object id: " + second_id);
  }
  if (*first == *second) {
    throw kinetic::ContractError("--pair wants two distinct objects");
  }

  std::string text;
  {
    WallTimer timer;
    text = kinetic::format_pieces_trace(scn, *first, *second, args.tolerance);
  }
  emit(text, args.output_path);
  return kExitEvent;
}

int run_oracle_check(const CommonArgs& args, const std::string& kind_name,
                     std::size_t samples,
                     const std::optional<double>& epsilon_override,
                     bool middle_only) {
  kinetic::EventKind kind;
  if (kind_name == "too-close") {
    kind = kinetic::EventKind::kTooClose;
  } else if (kind_name == "too-far") {
    kind = kinetic::EventKind::kTooFar;
  } else if (kind_name == "three-aligned") {
    kind = kinetic::EventKind::kThreeAligned;
  } else {
    throw kinetic::ContractError(
        "--kind wants too-close, too-far or three-aligned");
  }

  kinetic::ScenarioDocument doc = kinetic::load_scenario(args.scenario_path);
  kinetic::Scenario scn = epsilon_override
                              ? doc.scenario.with_epsilon(*epsilon_override)
                              : doc.scenario;
  const std::size_t focus = resolve_focus(scn, args.focus_id);

  kinetic::SolveOptions opts;
  opts.tol = args.tolerance;
  opts.threads = args.threads;
  opts.middle_only = middle_only;

  kinetic::OracleCheckResult result;
  {
    WallTimer timer;
    const kinetic::EventReport report = run_solver(kind, scn, focus, opts);
    const kinetic::GridSpec grid(scn.horizon(), samples);
    const auto oracle =
        kinetic::oracle_first_event(scn, kind, grid, focus, middle_only);

    kinetic::ReportParams params;
    params.focus_id = scn.objects()[focus].id();
    params.metric = scn.metric();
    params.tolerance = args.tolerance;
    if (kind == kinetic::EventKind::kThreeAligned) {
      params.epsilon = scn.epsilon();
      params.middle_only = middle_only;
    }
    result = kinetic::format_oracle_check(report, oracle, grid, params, doc);
  }
  emit(result.text, args.output_path);
  return result.pass ? kExitEvent : kExitNoEvent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"first-event queries for polynomially moving point objects"};
  app.require_subcommand(1);

  CommonArgs close_args;
  CLI::App* cmd_close =
      app.add_subcommand("too-close", "first time a pair gets too close");
  add_common(cmd_close, &close_args);

  CommonArgs far_args;
  CLI::App* cmd_far =
      app.add_subcommand("too-far", "first time a pair drifts out of range");
  add_common(cmd_far, &far_args);

  CommonArgs aligned_args;
  std::optional<double> aligned_epsilon;
  bool aligned_middle_only = false;
  CLI::App* cmd_aligned = app.add_subcommand(
      "three-aligned", "first epsilon-approximately collinear triple");
  add_common(cmd_aligned, &aligned_args);
  cmd_aligned->add_option("--epsilon", aligned_epsilon,
                          "alignment slack; overrides the scenario value");
  cmd_aligned->add_flag("--middle-only", aligned_middle_only,
                        "only consider the focus object as the middle one");

  CommonArgs pieces_args;
  std::string pair_spec;
  CLI::App* cmd_pieces = app.add_subcommand(
      "pieces", "piecewise description and trace of a pair separation");
  add_common(cmd_pieces, &pieces_args);
  cmd_pieces->add_option("--pair", pair_spec, "two object ids as A,B")
      ->required();

  CommonArgs check_args;
  std::string check_kind;
  std::size_t check_samples = kinetic::GridSpec::kDefaultSamples;
  std::optional<double> check_epsilon;
  bool check_middle_only = false;
  CLI::App* cmd_check = app.add_subcommand(
      "oracle-check", "compare the analytic answer against a dense sampling "
                      "scan");
  add_common(cmd_check, &check_args);
  cmd_check
      ->add_option("--kind", check_kind,
                   "which query: too-close, too-far or three-aligned")
      ->required();
  cmd_check->add_option("--samples", check_samples, "grid sample count");
  cmd_check->add_option("--epsilon", check_epsilon,
                        "alignment slack; overrides the scenario value");
  cmd_check->add_flag("--middle-only", check_middle_only,
                      "only consider the focus object as the middle one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    // usage problems share the input-error status and stderr shape
    std::fprintf(stderr, "error: input: %s\n", e.what());
    return kExitInputError;
  }

  try {
    if (cmd_close->parsed()) {
      return run_event_command(kinetic::EventKind::kTooClose, close_args,
                               std::nullopt, false);
    }
    if (cmd_far->parsed()) {
      return run_event_command(kinetic::EventKind::kTooFar, far_args,
                               std::nullopt, false);
    }
    if (cmd_aligned->parsed()) {
      return run_event_command(kinetic::EventKind::kThreeAligned,
                               aligned_args, aligned_epsilon,
                               aligned_middle_only);
    }
    if (cmd_pieces->parsed()) {
      return run_pieces(pieces_args, pair_spec);
    }
    if (cmd_check->parsed()) {
      return run_oracle_check(check_args, check_kind, check_samples,
                              check_epsilon, check_middle_only);
    }
    std::fprintf(stderr, "error: input: no subcommand selected\n");
    return kExitInputError;
  } catch (const kinetic::NumericalError& e) {
    std::fprintf(stderr, "error: numerical: %s\n", e.what());
    return kExitNumericalError;
  } catch (const kinetic::ContractError& e) {
    std::fprintf(stderr, "error: input: %s\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: internal: %s\n", e.what());
    return kExitInputError;
  }
}
