#include "kinetic/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "kinetic/errors.hpp"

namespace kinetic {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ContractError(path + ": " + what);
}

const json& require_field(const json& obj, const std::string& path,
                          const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double as_number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

Polynomial parse_coeffs(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of coefficients");
  std::vector<double> coeffs;
  coeffs.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    coeffs.push_back(as_number(v[k], path + "[" + std::to_string(k) + "]"));
  }
  try {
    return Polynomial(std::move(coeffs));
  } catch (const ContractError& e) {
    fail(path, e.what());
  }
}

std::optional<std::optional<double>> parse_expected_entry(
    const json& obj, const std::string& path, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) return std::nullopt;
  // explicit null means "expected no event"; keep the outer optional engaged
  if (it->is_null()) return std::make_optional<std::optional<double>>();
  return std::optional<std::optional<double>>(
      as_number(*it, path + "." + std::string(key)));
}

}  // namespace

const std::optional<std::optional<double>>& ExpectedResults::for_kind(
    EventKind kind) const {
  switch (kind) {
    case EventKind::kTooClose:
      return too_close;
    case EventKind::kTooFar:
      return too_far;
    case EventKind::kThreeAligned:
      return three_aligned;
  }
  throw ContractError("unknown event kind");
}

ScenarioDocument parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ContractError(std::string("scenario is not valid JSON: ") +
                        e.what());
  }
  if (!doc.is_object()) fail("$", "expected a JSON object");

  const double horizon_hi = as_number(require_field(doc, "$", "horizon"),
                                      "$.horizon");
  if (!std::isfinite(horizon_hi) || horizon_hi < 0.0) {
    fail("$.horizon", "must be finite and nonnegative");
  }
  const IntervalT horizon(0.0, horizon_hi);

  const double dim_raw = as_number(require_field(doc, "$", "dimension"),
                                   "$.dimension");
  if (dim_raw < 1.0 || dim_raw != std::floor(dim_raw)) {
    fail("$.dimension", "must be a positive integer");
  }
  const std::size_t dimension = static_cast<std::size_t>(dim_raw);

  const std::string metric_str =
      as_string(require_field(doc, "$", "metric"), "$.metric");
  Metric metric;
  if (metric_str == "manhattan") {
    metric = Metric::kManhattan;
  } else if (metric_str == "euclidean") {
    metric = Metric::kEuclidean;
  } else {
    fail("$.metric", "expected \"manhattan\" or \"euclidean\", got \"" +
                         metric_str + "\"");
  }

  double epsilon = 1e-3;
  if (auto it = doc.find("epsilon"); it != doc.end()) {
    epsilon = as_number(*it, "$.epsilon");
  }

  std::vector<MovingObject> objects;

  const json& objs = require_field(doc, "$", "objects");
  if (!objs.is_array() || objs.empty()) {
    fail("$.objects", "expected a nonempty array");
  }
  for (std::size_t k = 0; k < objs.size(); ++k) {
    const std::string path = "$.objects[" + std::to_string(k) + "]";
    const json& o = objs[k];
    const std::string id = as_string(require_field(o, path, "id"),
                                     path + ".id");
    const json& coords = require_field(o, path, "coords");
    if (!coords.is_array() || coords.size() != dimension) {
      fail(path + ".coords", "expected " + std::to_string(dimension) +
                                 " coefficient arrays (one per coordinate)");
    }
    std::vector<Polynomial> polys;
    polys.reserve(dimension);
    for (std::size_t c = 0; c < coords.size(); ++c) {
      polys.push_back(parse_coeffs(
          coords[c], path + ".coords[" + std::to_string(c) + "]"));
    }
    const double safe_radius = as_number(
        require_field(o, path, "safe_radius"), path + ".safe_radius");
    std::optional<double> comm_range;
    if (auto it = o.find("comm_range"); it != o.end() && !it->is_null()) {
      comm_range = as_number(*it, path + ".comm_range");
    }
    try {
      objects.emplace_back(id, Trajectory(std::move(polys), horizon),
                           safe_radius, comm_range);
    } catch (const ContractError& e) {
      fail(path, e.what());
    }
  }

  if (auto it = doc.find("trig_objects"); it != doc.end()) {
    if (!it->is_array()) fail("$.trig_objects", "expected an array");
    if (dimension != 2 && !it->empty()) {
      fail("$.trig_objects", "trig motion is planar; dimension must be 2");
    }
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string path = "$.trig_objects[" + std::to_string(k) + "]";
      const json& o = (*it)[k];
      const std::string id = as_string(require_field(o, path, "id"),
                                       path + ".id");
      TrigMotionParams params{};
      params.R1 = as_number(require_field(o, path, "R1"), path + ".R1");
      params.R2 = as_number(require_field(o, path, "R2"), path + ".R2");
      params.a = as_number(require_field(o, path, "a"), path + ".a");
      params.theta0 =
          as_number(require_field(o, path, "theta0"), path + ".theta0");
      params.x0 = as_number(require_field(o, path, "x0"), path + ".x0");
      params.y0 = as_number(require_field(o, path, "y0"), path + ".y0");
      double err_bound = kDefaultTrigErrBound;
      if (auto f = o.find("err_bound"); f != o.end()) {
        err_bound = as_number(*f, path + ".err_bound");
      }
      double safe_radius = 0.0;
      if (auto f = o.find("safe_radius"); f != o.end()) {
        safe_radius = as_number(*f, path + ".safe_radius");
      }
      std::optional<double> comm_range;
      if (auto f = o.find("comm_range"); f != o.end() && !f->is_null()) {
        comm_range = as_number(*f, path + ".comm_range");
      }
      try {
        objects.emplace_back(id,
                             approximate_trig_motion(params, horizon,
                                                     err_bound),
                             safe_radius, comm_range);
      } catch (const ContractError& e) {
        fail(path, e.what());
      }
    }
  }

  ExpectedResults expected;
  if (auto it = doc.find("expected"); it != doc.end()) {
    if (!it->is_object()) fail("$.expected", "expected an object");
    expected.too_close = parse_expected_entry(*it, "$.expected", "too_close");
    expected.too_far = parse_expected_entry(*it, "$.expected", "too_far");
    expected.three_aligned =
        parse_expected_entry(*it, "$.expected", "three_aligned");
  }

  try {
    return ScenarioDocument{
        Scenario(std::move(objects), metric, horizon, epsilon),
        std::move(expected)};
  } catch (const ContractError& e) {
    fail("$", e.what());
  }
}

ScenarioDocument load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ContractError("cannot open scenario file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

namespace {

// Round to 12 significant digits through the shortest decimal that
// round-trips it, so serialized numbers are stable and readable.
double round_sig12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

json json_time(const std::optional<double>& t) {
  if (!t) return nullptr;
  return round_sig12(*t);
}

ordered_json witness_json(const AlignmentWitness& w, const Scenario& scn) {
  ordered_json out;
  out["triple"] = {scn.objects()[w.triple[0]].id(),
                   scn.objects()[w.triple[1]].id(),
                   scn.objects()[w.triple[2]].id()};
  out["defect"] = defect_name(w.defect);
  out["middle"] = scn.objects()[w.middle].id();
  return out;
}

ordered_json params_json(const ReportParams& params) {
  ordered_json out;
  out["focus"] = params.focus_id;
  out["metric"] = metric_name(params.metric);
  out["tolerance"] = round_sig12(params.tolerance);
  if (params.epsilon) out["epsilon"] = round_sig12(*params.epsilon);
  if (params.middle_only) out["middle_only"] = *params.middle_only;
  return out;
}

}  // namespace

std::string event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::kTooClose:
      return "too_close";
    case EventKind::kTooFar:
      return "too_far";
    case EventKind::kThreeAligned:
      return "three_aligned";
  }
  throw ContractError("unknown event kind");
}

std::string metric_name(Metric metric) {
  return metric == Metric::kManhattan ? "manhattan" : "euclidean";
}

std::string defect_name(DefectExpr defect) {
  switch (defect) {
    case DefectExpr::kAPlusBMinusC:
      return "a+b-c";
    case DefectExpr::kAPlusCMinusB:
      return "a+c-b";
    case DefectExpr::kBPlusCMinusA:
      return "b+c-a";
  }
  throw ContractError("unknown defect expression");
}

std::string format_report(const EventReport& report, const Scenario& scn,
                          const ReportParams& params) {
  ordered_json out;
  out["kind"] = event_kind_name(report.kind);
  out["min_time"] = json_time(report.min_time);
  ordered_json participants = ordered_json::array();
  if (report.kind == EventKind::kThreeAligned) {
    for (const AlignmentWitness& w : report.triples) {
      participants.push_back({scn.objects()[w.triple[0]].id(),
                              scn.objects()[w.triple[1]].id(),
                              scn.objects()[w.triple[2]].id()});
    }
  } else {
    for (std::size_t j : report.partners) {
      participants.push_back(scn.objects()[j].id());
    }
  }
  out["participants"] = participants;
  if (report.kind == EventKind::kThreeAligned && !report.triples.empty()) {
    out["witness"] = witness_json(report.triples.front(), scn);
  } else {
    out["witness"] = nullptr;
  }
  out["parameters"] = params_json(params);
  return out.dump(2) + "\n";
}

std::string format_pieces_trace(const Scenario& scn, std::size_t first,
                                std::size_t second, double tol,
                                std::size_t trace_samples) {
  const Trajectory& a = scn.objects()[first].traj();
  const Trajectory& b = scn.objects()[second].traj();

  std::ostringstream out;
  char buf[40];
  const auto num = [&buf](double v) {
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::string(buf);
  };

  const GridSpec grid(scn.horizon(), trace_samples);

  const auto emit_pieces = [&](const PiecewiseFunction& f,
                               const char* function_name) {
    out << "# pair " << scn.objects()[first].id() << ","
        << scn.objects()[second].id() << " metric "
        << metric_name(scn.metric()) << " function " << function_name
        << " pieces " << f.pieces().size() << "\n";
    for (std::size_t k = 0; k < f.pieces().size(); ++k) {
      const Piece& p = f.pieces()[k];
      out << "# piece " << k << " interval [" << num(p.interval.lo()) << ","
          << num(p.interval.hi()) << "] coeffs [";
      const auto& coeffs = p.func.coefficients();
      if (coeffs.empty()) {
        out << "0";
      } else {
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
          if (c) out << ",";
          out << num(coeffs[c]);
        }
      }
      out << "]\n";
    }
    out << "t,value\n";
    for (std::size_t k = 0; k < grid.samples(); ++k) {
      const double t = grid.time_at(k);
      out << num(t) << "," << num(f.eval(t)) << "\n";
    }
  };

  if (scn.metric() == Metric::kManhattan) {
    emit_pieces(manhattan_distance_fn(a, b, tol), "distance");
  } else {
    emit_pieces(PiecewiseFunction::single(euclidean_distance_sq_fn(a, b),
                                          scn.horizon()),
                "distance_squared");
  }
  return out.str();
}

OracleCheckResult format_oracle_check(const EventReport& report,
                                      const std::optional<OracleEvent>& oracle,
                                      const GridSpec& grid,
                                      const ReportParams& params,
                                      const ScenarioDocument& doc) {
  OracleCheckResult result;
  std::string detail;

  bool bracket_ok;
  if (report.min_time && oracle) {
    const double pad = grid.cell_width();
    const double lo = oracle->bracket.lo() - pad;
    const double hi = oracle->bracket.hi() + pad;
    bracket_ok = *report.min_time >= lo && *report.min_time <= hi;
    if (!bracket_ok) detail = "analytic time outside the sampled bracket";
  } else if (!report.min_time && !oracle) {
    bracket_ok = true;
  } else if (report.min_time) {
    bracket_ok = false;
    detail = "solver reports an event the sampled scan never sees";
  } else {
    bracket_ok = false;
    detail = "sampled scan fires but the solver reports no event";
  }

  bool expected_ok = true;
  const auto& expected = doc.expected.for_kind(report.kind);
  if (expected) {
    if (expected->has_value() != report.min_time.has_value()) {
      expected_ok = false;
    } else if (*expected) {
      const double want = **expected;
      const double tol_cmp = 1e-6 * std::max(1.0, std::abs(want));
      expected_ok = std::abs(*report.min_time - want) <= tol_cmp;
    }
    if (!expected_ok) {
      if (!detail.empty()) detail += "; ";
      detail += "expected answer in the file does not match the solver";
    }
  }

  result.pass = bracket_ok && expected_ok;

  ordered_json out;
  out["kind"] = event_kind_name(report.kind);
  ordered_json solver;
  solver["min_time"] = json_time(report.min_time);
  out["solver"] = solver;
  if (oracle) {
    ordered_json osec;
    osec["bracket"] = {round_sig12(oracle->bracket.lo()),
                       round_sig12(oracle->bracket.hi())};
    out["oracle"] = osec;
  } else {
    out["oracle"] = nullptr;
  }
  if (expected) {
    out["expected"] = json_time(*expected);
  }
  out["samples"] = grid.samples();
  out["verdict"] = result.pass ? "PASS" : "FAIL";
  if (!detail.empty()) out["detail"] = detail;
  out["parameters"] = params_json(params);
  result.text = out.dump(2) + "\n";
  return result;
}

}  // namespace kinetic
