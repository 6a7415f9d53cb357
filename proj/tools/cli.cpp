#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "normdyn/config.hpp"
#include "normdyn/engine.hpp"
#include "normdyn/errors.hpp"
#include "normdyn/report.hpp"
#include "normdyn/service.hpp"
#include "normdyn/version.hpp"

namespace normdyn::cli {

namespace {

struct Overrides {
  std::optional<int> Z, N;
  std::optional<double> b, c, r, m, p_star, lambda, mu;
  std::optional<std::string> weighting;

  std::optional<std::string> x_axis, y_axis;
  std::optional<double> x_min, x_max, y_min, y_max;
  std::optional<int> resolution;

  std::optional<std::uint64_t> seed;
  std::optional<long> steps, burn_in;
  std::optional<std::string> mode, mutation;
  std::optional<int> initial, group_draws, replicates;
  std::vector<int> thresholds;

  std::optional<std::string> scan_axis;
  std::vector<double> scan_values;

  std::optional<std::string> method;
  std::optional<double> tol;
  std::optional<long> max_steps;
  std::optional<int> initial_state;

  std::optional<std::string> config, out, format;
};

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON configuration document");
  sub->add_option("--out", o.out, "output path (default: stdout)");
  sub->add_option("--format", o.format, "csv | json | svg");
  sub->add_option("--Z", o.Z, "population size");
  sub->add_option("--N", o.N, "group size");
  sub->add_option("--b", o.b, "endowment");
  sub->add_option("--c", o.c, "cost of cooperation (fraction of b)");
  sub->add_option("--r", o.r, "perceived risk");
  sub->add_option("--m", o.m, "perceived magnitude");
  sub->add_option("--p-star", o.p_star, "critical cooperator fraction");
  sub->add_option("--lambda", o.lambda, "intensity of selection");
  sub->add_option("--mu", o.mu, "mutation rate");
  sub->add_option("--weighting", o.weighting, "conditional | printed");
}

template <typename T, typename U>
void set_if(const std::optional<T>& v, U& target) {
  if (v) target = static_cast<U>(*v);
}

RunSpec build_spec(Command command, const Overrides& o) {
  nlohmann::json doc = nlohmann::json::object();
  if (o.config) {
    std::ifstream in(*o.config);
    if (!in) throw ConfigError(std::vector<FieldError>{{"--config", "cannot read '" + *o.config + "'"}});
    std::stringstream text;
    text << in.rdbuf();
    try {
      doc = nlohmann::json::parse(text.str(), nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::vector<FieldError>{{"--config", std::string("malformed document: ") + e.what()}});
    }
    if (!doc.is_object()) throw ConfigError(std::vector<FieldError>{{"--config", "expected a top-level object"}});
  }
  doc["command"] = std::string(to_string(command));
  RunSpec spec = parse_config(doc.dump());

  try {
    Params& p = spec.params;
    set_if(o.Z, p.Z);
    set_if(o.N, p.N);
    set_if(o.b, p.b);
    set_if(o.c, p.c);
    set_if(o.r, p.r);
    set_if(o.m, p.m);
    set_if(o.p_star, p.p_star);
    set_if(o.lambda, p.lambda);
    set_if(o.mu, p.mu);
    if (o.weighting) p.weighting = payoff_weighting_from_string(*o.weighting);

    if (o.x_axis) spec.x_axis.axis = axis_from_string(*o.x_axis);
    if (o.y_axis) spec.y_axis.axis = axis_from_string(*o.y_axis);
    set_if(o.x_min, spec.x_axis.lo);
    set_if(o.x_max, spec.x_axis.hi);
    set_if(o.y_min, spec.y_axis.lo);
    set_if(o.y_max, spec.y_axis.hi);
    set_if(o.resolution, spec.resolution);

    set_if(o.seed, spec.sim.seed);
    set_if(o.steps, spec.sim.steps);
    set_if(o.burn_in, spec.sim.burn_in);
    if (o.mode) spec.sim.mode = sim_mode_from_string(*o.mode);
    if (o.mutation) spec.sim.mutation = mutation_scheme_from_string(*o.mutation);
    set_if(o.initial, spec.sim.initial_cooperators);
    set_if(o.group_draws, spec.sim.group_draws);
    set_if(o.replicates, spec.replicates);
    if (!o.thresholds.empty()) spec.sim.thresholds = o.thresholds;

    if (o.scan_axis) {
      const ScanAxis axis = scan_axis_from_string(*o.scan_axis);
      if (axis != spec.scan_axis && o.scan_values.empty()) spec.scan_values = default_scan_values(axis, spec.params.Z);
      spec.scan_axis = axis;
    }
    if (!o.scan_values.empty()) spec.scan_values = o.scan_values;
    // N defaults depend on Z; refresh them if Z was overridden.
    if (o.Z && o.scan_values.empty() && spec.scan_axis == ScanAxis::N)
      spec.scan_values = default_scan_values(ScanAxis::N, spec.params.Z);

    if (o.method) spec.method = stationary_method_from_string(*o.method);
    set_if(o.tol, spec.power.tol);
    set_if(o.max_steps, spec.power.max_steps);
    set_if(o.initial_state, spec.power.initial_state);

    if (o.out) spec.out_path = *o.out;
    if (o.format) spec.format = output_format_from_string(*o.format);
  } catch (const ValidationError& e) {
    throw ConfigError(std::vector<FieldError>{{e.field(), e.reason()}});
  }
  spec.sim.params = spec.params;
  validate(spec);
  return spec;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"normdyn: stochastic dynamics of norm adherence in a threshold collective-risk dilemma"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Overrides o;
  struct Entry {
    Command command;
    CLI::App* sub;
  };
  std::vector<Entry> commands = {
      {Command::gradient, app.add_subcommand("gradient", "gradient of selection, mean payoffs, transition rates")},
      {Command::stationary, app.add_subcommand("stationary", "stationary distribution")},
      {Command::classify, app.add_subcommand("classify", "regime classification with roots and stationary mass")},
      {Command::sweep, app.add_subcommand("sweep", "two-parameter regime map")},
      {Command::simulate, app.add_subcommand("simulate", "agent-based Monte Carlo run")},
      {Command::scan, app.add_subcommand("scan", "monotonicity scan of T+(k) along one parameter")},
  };
  for (auto& e : commands) add_common(e.sub, o);

  auto* sweep_cmd = commands[3].sub;
  sweep_cmd->add_option("--x-axis", o.x_axis, "r | m | rm | c | p_star");
  sweep_cmd->add_option("--y-axis", o.y_axis, "r | m | rm | c | p_star");
  sweep_cmd->add_option("--x-min", o.x_min, "x axis lower bound");
  sweep_cmd->add_option("--x-max", o.x_max, "x axis upper bound");
  sweep_cmd->add_option("--y-min", o.y_min, "y axis lower bound");
  sweep_cmd->add_option("--y-max", o.y_max, "y axis upper bound");
  sweep_cmd->add_option("--resolution", o.resolution, "points per axis");

  auto* sim_cmd = commands[4].sub;
  sim_cmd->add_option("--seed", o.seed, "random seed");
  sim_cmd->add_option("--steps", o.steps, "update events including burn-in");
  sim_cmd->add_option("--burn-in", o.burn_in, "events discarded before recording occupancy");
  sim_cmd->add_option("--mode", o.mode, "mean_field | sampled_groups");
  sim_cmd->add_option("--mutation", o.mutation, "chain_matched | focal_random");
  sim_cmd->add_option("--initial", o.initial, "initial number of cooperators");
  sim_cmd->add_option("--group-draws", o.group_draws, "groups averaged per payoff (sampled_groups)");
  sim_cmd->add_option("--replicates", o.replicates, "independent runs with derived seeds");
  sim_cmd->add_option("--threshold", o.thresholds, "report crossings of this k (repeatable)");

  auto* scan_cmd = commands[5].sub;
  scan_cmd->add_option("--scan-axis", o.scan_axis, "c | N | rm");
  scan_cmd->add_option("--values", o.scan_values, "grid values")->delimiter(',');

  auto* stat_cmd = commands[1].sub;
  stat_cmd->add_option("--method", o.method, "closed_form | power_iteration");
  stat_cmd->add_option("--tol", o.tol, "power iteration max-norm step tolerance");
  stat_cmd->add_option("--max-steps", o.max_steps, "power iteration step limit");
  stat_cmd->add_option("--initial-state", o.initial_state, "power iteration starting state");

  std::string host = "127.0.0.1";
  int port = 8080;
  ServiceOptions service_options;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP compute service");
  serve_cmd->add_option("--host", host, "bind address");
  serve_cmd->add_option("--port", port, "TCP port");
  serve_cmd->add_option("--max-cells", service_options.max_sweep_cells, "sweep cell budget per request");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  if (serve_cmd->parsed()) {
    Service service(service_options);
    err << "normdyn " << kVersion << " serving on http://" << host << ':' << port << '\n';
    if (!service.listen(host, port)) {
      err << "error: cannot bind " << host << ':' << port << '\n';
      return kRuntime;
    }
    return kOk;
  }

  Command command = Command::classify;
  for (const auto& e : commands)
    if (e.sub->parsed()) command = e.command;

  try {
    const RunSpec spec = build_spec(command, o);
    const RunResult result = execute(spec);
    const std::string text = render(spec, result, spec.format);
    if (spec.out_path.empty())
      out << text;
    else
      write_file(spec.out_path, text);
    return kOk;
  } catch (const ConfigError& e) {
    for (const auto& fe : e.errors()) err << "invalid " << fe.field << ": " << fe.message << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "invalid " << e.field() << ": " << e.reason() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

}  // namespace normdyn::cli
