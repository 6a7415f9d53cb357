#include "normdyn/config.hpp"

#include <cmath>
#include <set>

#include "normdyn/errors.hpp"

namespace normdyn {

using nlohmann::json;

namespace {

std::string join_messages(const std::vector<FieldError>& errors) {
  std::string s;
  for (const auto& e : errors) {
    if (!s.empty()) s += "; ";
    s += e.field + ": " + e.message;
  }
  return s;
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed,
                std::vector<FieldError>& errors) {
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items())
    if (!ok.count(key)) errors.push_back({path + "." + key, "unknown key"});
}

bool expect_object(const json& j, const std::string& path, std::vector<FieldError>& errors) {
  if (j.is_object()) return true;
  errors.push_back({path, "expected an object"});
  return false;
}

void read_number(const json& j, const char* key, const std::string& path, double& out,
                 std::vector<FieldError>& errors) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_number()) {
    errors.push_back({path + "." + key, "expected a number"});
    return;
  }
  out = v.get<double>();
}

template <typename Int>
void read_integer(const json& j, const char* key, const std::string& path, Int& out,
                  std::vector<FieldError>& errors) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (v.is_number_integer() || v.is_number_unsigned()) {
    out = v.get<Int>();
  } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
    out = static_cast<Int>(v.get<double>());
  } else {
    errors.push_back({path + "." + key, "expected an integer"});
  }
}

template <typename Enum, typename Parse>
void read_enum(const json& j, const char* key, const std::string& path, Enum& out, Parse parse,
               std::vector<FieldError>& errors) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_string()) {
    errors.push_back({path + "." + key, "expected a string"});
    return;
  }
  try {
    out = parse(v.get<std::string>());
  } catch (const ValidationError& e) {
    errors.push_back({path + "." + key, e.reason()});
  }
}

void rethrow_validation(const ValidationError& e) { throw ConfigError(std::vector<FieldError>{{e.field(), e.reason()}}); }

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors)
    : std::runtime_error(join_messages(errors)), errors_(std::move(errors)) {}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::gradient: return "gradient";
    case Command::stationary: return "stationary";
    case Command::classify: return "classify";
    case Command::sweep: return "sweep";
    case Command::simulate: return "simulate";
    case Command::scan: return "scan";
  }
  return "classify";
}

Command command_from_string(std::string_view s) {
  for (Command c : {Command::gradient, Command::stationary, Command::classify, Command::sweep, Command::simulate,
                    Command::scan})
    if (to_string(c) == s) return c;
  throw ValidationError("command", "unknown command '" + std::string(s) + "'");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
    case OutputFormat::svg: return "svg";
  }
  return "csv";
}

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "svg") return OutputFormat::svg;
  throw ValidationError("output.format", "expected csv, json or svg, got '" + std::string(s) + "'");
}

std::string_view to_string(StationaryMethod m) {
  return m == StationaryMethod::power_iteration ? "power_iteration" : "closed_form";
}

StationaryMethod stationary_method_from_string(std::string_view s) {
  if (s == "closed_form") return StationaryMethod::closed_form;
  if (s == "power_iteration") return StationaryMethod::power_iteration;
  throw ValidationError("stationary.method", "expected closed_form or power_iteration, got '" + std::string(s) + "'");
}

std::vector<double> default_scan_values(ScanAxis axis, int Z) {
  std::vector<double> v;
  if (axis == ScanAxis::N) {
    for (int n = 2; n <= std::min(20, Z); ++n) v.push_back(n);
  } else {
    for (int i = 1; i <= 9; ++i) v.push_back(i / 10.0);
  }
  return v;
}

Params params_from_json(const json& j, const std::string& path, std::vector<FieldError>& errors) {
  Params p;
  if (j.is_null()) return p;
  if (!expect_object(j, path, errors)) return p;
  check_keys(j, path, {"Z", "N", "b", "c", "r", "m", "p_star", "lambda", "mu", "weighting"}, errors);
  read_integer(j, "Z", path, p.Z, errors);
  read_integer(j, "N", path, p.N, errors);
  read_number(j, "b", path, p.b, errors);
  read_number(j, "c", path, p.c, errors);
  read_number(j, "r", path, p.r, errors);
  read_number(j, "m", path, p.m, errors);
  read_number(j, "p_star", path, p.p_star, errors);
  read_number(j, "lambda", path, p.lambda, errors);
  read_number(j, "mu", path, p.mu, errors);
  read_enum(j, "weighting", path, p.weighting, payoff_weighting_from_string, errors);
  return p;
}

json params_to_json(const Params& p) {
  return json{{"Z", p.Z},          {"N", p.N},           {"b", p.b},
              {"c", p.c},          {"r", p.r},           {"m", p.m},
              {"p_star", p.p_star}, {"lambda", p.lambda}, {"mu", p.mu},
              {"weighting", std::string(to_string(p.weighting))}};
}

AxisSpec axis_from_json(const json& j, const std::string& path, const AxisSpec& fallback,
                        std::vector<FieldError>& errors) {
  AxisSpec a = fallback;
  if (j.is_string()) {
    try {
      a.axis = axis_from_string(j.get<std::string>());
    } catch (const ValidationError& e) {
      errors.push_back({path, e.reason()});
    }
    return a;
  }
  if (!expect_object(j, path, errors)) return a;
  check_keys(j, path, {"axis", "min", "max"}, errors);
  read_enum(j, "axis", path, a.axis, axis_from_string, errors);
  read_number(j, "min", path, a.lo, errors);
  read_number(j, "max", path, a.hi, errors);
  return a;
}

void validate(const RunSpec& spec) {
  try {
    validate(spec.params);
    switch (spec.command) {
      case Command::sweep: {
        if (spec.resolution < 2) throw ValidationError("sweep.resolution", "must be >= 2");
        const auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
        for (const auto* a : {&spec.x_axis, &spec.y_axis})
          if (!in_unit(a->lo) || !in_unit(a->hi))
            throw ValidationError(a == &spec.x_axis ? "sweep.x" : "sweep.y", "axis range must lie within [0,1]");
        const Axis x = spec.x_axis.axis, y = spec.y_axis.axis;
        const bool rm_clash = (x == Axis::rm && (y == Axis::r || y == Axis::m)) ||
                              (y == Axis::rm && (x == Axis::r || x == Axis::m));
        if (x == y) throw ValidationError("sweep.y", "x and y axes must differ");
        if (rm_clash) throw ValidationError("sweep.y", "an rm axis cannot be combined with an r or m axis");
        break;
      }
      case Command::simulate:
        validate(spec.sim);
        if (!(spec.sim.params == spec.params)) throw ValidationError("simulate", "params out of sync");
        if (spec.replicates < 1) throw ValidationError("simulate.replicates", "must be >= 1");
        break;
      case Command::scan:
        if (spec.scan_values.size() < 2) throw ValidationError("scan.values", "need at least two values");
        for (double v : spec.scan_values) {
          if (spec.scan_axis == ScanAxis::N) {
            if (v != std::floor(v) || v < 1 || v > spec.params.Z)
              throw ValidationError("scan.values", "N values must be integers in [1, Z]");
          } else if (!(v >= 0.0 && v <= 1.0)) {
            throw ValidationError("scan.values", "values must lie in [0,1]");
          }
        }
        break;
      case Command::stationary:
        if (!(spec.power.tol > 0.0)) throw ValidationError("stationary.tol", "must be > 0");
        if (spec.power.max_steps < 1) throw ValidationError("stationary.max_steps", "must be >= 1");
        if (spec.power.initial_state < 0 || spec.power.initial_state > spec.params.Z)
          throw ValidationError("stationary.initial_state", "must lie in [0, Z]");
        [[fallthrough]];
      case Command::classify:
        if (spec.params.mu <= 0.0)
          throw ValidationError("params.mu", "must be > 0 for a unique stationary distribution");
        break;
      case Command::gradient:
        break;
    }
  } catch (const ValidationError& e) {
    rethrow_validation(e);
  }
}

RunSpec parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::vector<FieldError>{{"$", std::string("malformed document: ") + e.what()}});
  }
  std::vector<FieldError> errors;
  RunSpec spec;
  if (!doc.is_object()) throw ConfigError(std::vector<FieldError>{{"$", "expected a top-level object"}});
  check_keys(doc, "$", {"command", "params", "sweep", "simulate", "scan", "stationary", "output"}, errors);

  if (!doc.contains("command")) {
    errors.push_back({"command", "missing"});
  } else {
    read_enum(doc, "command", "", spec.command, command_from_string, errors);
  }
  spec.params = params_from_json(doc.value("params", json()), "params", errors);

  if (doc.contains("sweep") && expect_object(doc["sweep"], "sweep", errors)) {
    const auto& s = doc["sweep"];
    check_keys(s, "sweep", {"x", "y", "resolution"}, errors);
    if (s.contains("x")) spec.x_axis = axis_from_json(s["x"], "sweep.x", spec.x_axis, errors);
    if (s.contains("y")) spec.y_axis = axis_from_json(s["y"], "sweep.y", spec.y_axis, errors);
    read_integer(s, "resolution", "sweep", spec.resolution, errors);
  }

  if (doc.contains("simulate") && expect_object(doc["simulate"], "simulate", errors)) {
    const auto& s = doc["simulate"];
    check_keys(s, "simulate",
               {"steps", "burn_in", "seed", "mode", "mutation", "initial_cooperators", "group_draws", "replicates",
                "thresholds"},
               errors);
    read_integer(s, "steps", "simulate", spec.sim.steps, errors);
    read_integer(s, "burn_in", "simulate", spec.sim.burn_in, errors);
    read_integer(s, "seed", "simulate", spec.sim.seed, errors);
    read_enum(s, "mode", "simulate", spec.sim.mode, sim_mode_from_string, errors);
    read_enum(s, "mutation", "simulate", spec.sim.mutation, mutation_scheme_from_string, errors);
    read_integer(s, "initial_cooperators", "simulate", spec.sim.initial_cooperators, errors);
    read_integer(s, "group_draws", "simulate", spec.sim.group_draws, errors);
    read_integer(s, "replicates", "simulate", spec.replicates, errors);
    if (s.contains("thresholds")) {
      if (!s["thresholds"].is_array()) {
        errors.push_back({"simulate.thresholds", "expected an array of integers"});
      } else {
        for (const auto& t : s["thresholds"]) {
          if (!t.is_number_integer()) {
            errors.push_back({"simulate.thresholds", "expected an array of integers"});
            break;
          }
          spec.sim.thresholds.push_back(t.get<int>());
        }
      }
    }
  }

  bool scan_values_given = false;
  if (doc.contains("scan") && expect_object(doc["scan"], "scan", errors)) {
    const auto& s = doc["scan"];
    check_keys(s, "scan", {"axis", "values"}, errors);
    read_enum(s, "axis", "scan", spec.scan_axis, scan_axis_from_string, errors);
    if (s.contains("values")) {
      scan_values_given = true;
      if (!s["values"].is_array()) {
        errors.push_back({"scan.values", "expected an array of numbers"});
      } else {
        for (const auto& v : s["values"]) {
          if (!v.is_number()) {
            errors.push_back({"scan.values", "expected an array of numbers"});
            break;
          }
          spec.scan_values.push_back(v.get<double>());
        }
      }
    }
  }

  if (doc.contains("stationary") && expect_object(doc["stationary"], "stationary", errors)) {
    const auto& s = doc["stationary"];
    check_keys(s, "stationary", {"method", "tol", "max_steps", "initial_state"}, errors);
    read_enum(s, "method", "stationary", spec.method, stationary_method_from_string, errors);
    read_number(s, "tol", "stationary", spec.power.tol, errors);
    read_integer(s, "max_steps", "stationary", spec.power.max_steps, errors);
    read_integer(s, "initial_state", "stationary", spec.power.initial_state, errors);
  }

  if (doc.contains("output") && expect_object(doc["output"], "output", errors)) {
    const auto& s = doc["output"];
    check_keys(s, "output", {"path", "format"}, errors);
    if (s.contains("path")) {
      if (s["path"].is_string())
        spec.out_path = s["path"].get<std::string>();
      else
        errors.push_back({"output.path", "expected a string"});
    }
    read_enum(s, "format", "output", spec.format, output_format_from_string, errors);
  }

  // read_* helpers build paths as "<section>.<key>"; the top-level command
  // was read with an empty section.
  for (auto& e : errors)
    if (e.field.rfind('.', 0) == 0) e.field.erase(0, 1);
  if (!errors.empty()) throw ConfigError(std::move(errors));

  if (!scan_values_given) spec.scan_values = default_scan_values(spec.scan_axis, spec.params.Z);
  spec.sim.params = spec.params;
  validate(spec);
  return spec;
}

}  // namespace normdyn
