#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "normdyn/config.hpp"
#include "normdyn/engine.hpp"

namespace normdyn {

/// Output could not be written; the message carries the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double v);

nlohmann::json result_to_json(const GradientResult& r);
nlohmann::json result_to_json(const StationaryResult& r);
nlohmann::json result_to_json(const AnalyzeResult& r);
nlohmann::json result_to_json(const SweepGrid& g);
nlohmann::json result_to_json(const SimulateResult& r, const SimConfig& cfg);
nlohmann::json result_to_json(const ScanReport& r);

/// Run metadata: engine version plus RNG details for simulations.
nlohmann::json run_meta(const RunSpec& spec);

/// {"params", "command", "result", "meta"}
nlohmann::json to_json(const RunSpec& spec, const RunResult& result);

/// Table with a '#'-prefixed metadata block naming every resolved parameter.
std::string to_csv(const RunSpec& spec, const RunResult& result);

/// Vector rendering of the same data the CSV carries.
std::string to_svg(const RunSpec& spec, const RunResult& result);

std::string render(const RunSpec& spec, const RunResult& result, OutputFormat format);

/// Writes `content` to `path`. Throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace normdyn
