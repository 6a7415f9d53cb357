#include "normdyn/engine.hpp"

namespace normdyn {

GradientResult compute_gradient(const Params& p) {
  validate(p);
  GradientResult out;
  out.transitions = build_transition_system(p);
  out.gradient = gradient_of_selection(p, out.transitions.payoffs);
  return out;
}

StationaryResult compute_stationary(const Params& p, StationaryMethod method, const PowerIterationOptions& power) {
  StationaryResult out;
  out.method = method;
  out.sigma = method == StationaryMethod::power_iteration ? stationary_power_iteration(p, power)
                                                           : stationary_closed_form(p);
  return out;
}

AnalyzeResult analyze(const Params& p) {
  validate(p);
  AnalyzeResult out;
  out.transitions = build_transition_system(p);
  out.gradient = gradient_of_selection(p, out.transitions.payoffs);
  out.sigma = stationary_closed_form(out.transitions);
  out.report = classify_regime(out.gradient, out.sigma);
  return out;
}

RunResult execute(const RunSpec& spec) {
  switch (spec.command) {
    case Command::gradient: return compute_gradient(spec.params);
    case Command::stationary: return compute_stationary(spec.params, spec.method, spec.power);
    case Command::classify: return analyze(spec.params);
    case Command::sweep: return sweep(spec.params, spec.x_axis, spec.y_axis, spec.resolution);
    case Command::simulate: {
      SimConfig cfg = spec.sim;
      cfg.params = spec.params;
      SimulateResult out;
      out.replicates = spec.replicates;
      out.sim = spec.replicates == 1 ? run_simulation(cfg) : run_replicates(cfg, spec.replicates);
      return out;
    }
    case Command::scan: return monotonicity_scan(spec.params, spec.scan_axis, spec.scan_values);
  }
  return analyze(spec.params);
}

}  // namespace normdyn
