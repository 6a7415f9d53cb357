#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "normdyn/abm.hpp"
#include "normdyn/analysis.hpp"
#include "normdyn/params.hpp"

namespace normdyn {

enum class Command { gradient, stationary, classify, sweep, simulate, scan };
enum class OutputFormat { csv, json, svg };
enum class StationaryMethod { closed_form, power_iteration };

std::string_view to_string(Command c);
Command command_from_string(std::string_view s);
std::string_view to_string(OutputFormat f);
OutputFormat output_format_from_string(std::string_view s);
std::string_view to_string(StationaryMethod m);
StationaryMethod stationary_method_from_string(std::string_view s);

struct FieldError {
  std::string field;
  std::string message;
};

/// One or more schema or domain violations in a configuration document or
/// request body.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

/// Fully resolved description of one run. Every option has a concrete value
/// after parsing.
struct RunSpec {
  Command command = Command::classify;
  Params params;

  AxisSpec x_axis{Axis::r, 0.0, 1.0};
  AxisSpec y_axis{Axis::m, 0.0, 1.0};
  int resolution = kDefaultSweepResolution;

  SimConfig sim;  // sim.params mirrors params
  int replicates = 1;

  ScanAxis scan_axis = ScanAxis::c;
  std::vector<double> scan_values;

  StationaryMethod method = StationaryMethod::closed_form;
  PowerIterationOptions power;

  std::string out_path;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
};

/// Default grid for a scan axis: c and rm over 0.1..0.9, N over 2..min(20, Z).
std::vector<double> default_scan_values(ScanAxis axis, int Z);

/// Reads the `params` object of a document. Unknown keys and type errors
/// are appended to `errors` with their JSON path; absent keys keep defaults.
Params params_from_json(const nlohmann::json& j, const std::string& path, std::vector<FieldError>& errors);
nlohmann::json params_to_json(const Params& p);

AxisSpec axis_from_json(const nlohmann::json& j, const std::string& path, const AxisSpec& fallback,
                        std::vector<FieldError>& errors);

/// Parses and validates a JSON configuration document:
///
///   { "command": "sweep",
///     "params":     { "Z": 100, "N": 5, "b": 1, "c": 0.01, "r": 0.7, "m": 0.7,
///                     "p_star": 0.5, "lambda": 5, "mu": 0.1, "weighting": "conditional" },
///     "sweep":      { "x": {"axis": "r", "min": 0, "max": 1}, "y": {...}, "resolution": 21 },
///     "simulate":   { "steps": ..., "burn_in": ..., "seed": ..., "mode": "mean_field",
///                     "mutation": "chain_matched", "initial_cooperators": ..., "group_draws": 1,
///                     "replicates": 1, "thresholds": [...] },
///     "scan":       { "axis": "c", "values": [...] },
///     "stationary": { "method": "closed_form", "tol": 1e-14, "max_steps": ..., "initial_state": 0 },
///     "output":     { "path": "out.csv", "format": "csv" } }
///
/// Throws ConfigError.
RunSpec parse_config(std::string_view text);

/// Re-checks cross-field constraints after command-line overrides.
void validate(const RunSpec& spec);

}  // namespace normdyn
