#pragma once

#include <variant>

#include "normdyn/abm.hpp"
#include "normdyn/analysis.hpp"
#include "normdyn/config.hpp"
#include "normdyn/dynamics.hpp"

namespace normdyn {

struct GradientResult {
  TransitionSystem transitions;  // carries the mean payoff curve
  GradientCurve gradient;
};

struct StationaryResult {
  StationaryDistribution sigma;
  StationaryMethod method = StationaryMethod::closed_form;
};

/// Everything the interactive explorer shows for one parameter set.
struct AnalyzeResult {
  TransitionSystem transitions;
  GradientCurve gradient;
  StationaryDistribution sigma;
  RegimeReport report;
};

struct SimulateResult {
  SimResult sim;
  int replicates = 1;
};

using RunResult = std::variant<GradientResult, StationaryResult, AnalyzeResult, SweepGrid, SimulateResult, ScanReport>;

GradientResult compute_gradient(const Params& p);
StationaryResult compute_stationary(const Params& p, StationaryMethod method, const PowerIterationOptions& power);
AnalyzeResult analyze(const Params& p);

/// Runs the command described by a validated RunSpec.
RunResult execute(const RunSpec& spec);

}  // namespace normdyn
