#include "normdyn/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "normdyn/errors.hpp"

namespace normdyn {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::all_defect: return "ALL_DEFECT";
    case Regime::bistable_defect_dominant: return "BISTABLE_DEFECT_DOMINANT";
    case Regime::bistable_polymorphic_dominant: return "BISTABLE_POLYMORPHIC_DOMINANT";
    case Regime::all_cooperate: return "ALL_COOPERATE";
  }
  return "ALL_DEFECT";
}

Regime regime_from_string(std::string_view s) {
  for (Regime r : {Regime::all_defect, Regime::bistable_defect_dominant, Regime::bistable_polymorphic_dominant,
                   Regime::all_cooperate})
    if (to_string(r) == s) return r;
  throw ValidationError("regime", "unknown regime label '" + std::string(s) + "'");
}

std::string_view to_string(Stability s) { return s == Stability::stable ? "stable" : "unstable"; }

GradientCurve gradient_of_selection(const Params& p, const MeanPayoffCurve& payoffs) {
  GradientCurve out;
  out.g.resize(p.Z + 1, 0.0);
  for (int k = 1; k < p.Z; ++k) {
    const double diff = payoffs.pi_c[k] - payoffs.pi_d[k];
    out.g[k] = (1.0 - p.mu) * selection_factor(k, p.Z) * std::tanh(0.5 * p.lambda * diff);
  }
  return out;
}

GradientCurve gradient_of_selection(const Params& p) { return gradient_of_selection(p, build_mean_payoff_curve(p)); }

StationaryDistribution stationary_closed_form(const TransitionSystem& ts) {
  const int Z = ts.population();
  std::vector<double> log_w(Z + 1, 0.0);
  for (int j = 1; j <= Z; ++j) {
    const double up = ts.t_plus[j - 1];
    const double down = ts.t_minus[j];
    if (!(up > 0.0) || !(down > 0.0))
      throw NonErgodicError("zero transition rate between states " + std::to_string(j - 1) + " and " +
                            std::to_string(j) + "; the chain is not ergodic (mu must be in (0,1])");
    log_w[j] = log_w[j - 1] + std::log(up) - std::log(down);
  }
  const double top = *std::max_element(log_w.begin(), log_w.end());
  StationaryDistribution out;
  out.sigma.resize(Z + 1);
  double total = 0.0;
  for (int k = 0; k <= Z; ++k) total += out.sigma[k] = std::exp(log_w[k] - top);
  for (double& s : out.sigma) s /= total;
  return out;
}

StationaryDistribution stationary_closed_form(const Params& p) {
  validate(p);
  return stationary_closed_form(build_transition_system(p));
}

StationaryDistribution stationary_power_iteration(const TransitionSystem& ts, const PowerIterationOptions& opts) {
  const int Z = ts.population();
  if (!(opts.tol > 0.0)) throw ValidationError("tol", "must be > 0");
  if (opts.initial_state < 0 || opts.initial_state > Z)
    throw ValidationError("initial_state", "must lie in [0, Z]");
  std::vector<double> cur(Z + 1, 0.0), next;
  cur[opts.initial_state] = 1.0;
  for (long step = 0; step < opts.max_steps; ++step) {
    propagate(ts, cur, next);
    double diff = 0.0;
    for (int k = 0; k <= Z; ++k) diff = std::max(diff, std::abs(next[k] - cur[k]));
    cur.swap(next);
    if (diff < opts.tol) {
      double total = 0.0;
      for (double v : cur) total += v;
      for (double& v : cur) v /= total;
      return {std::move(cur)};
    }
  }
  throw ConvergenceError("power iteration did not reach tol=" + std::to_string(opts.tol) + " within " +
                         std::to_string(opts.max_steps) + " steps");
}

StationaryDistribution stationary_power_iteration(const Params& p, const PowerIterationOptions& opts) {
  validate(p);
  if (p.mu <= 0.0) throw NonErgodicError("mu = 0 leaves two absorbing states; no unique stationary law");
  return stationary_power_iteration(build_transition_system(p), opts);
}

std::vector<Root> interior_roots(const GradientCurve& gradient) {
  const int Z = static_cast<int>(gradient.g.size()) - 1;
  std::vector<Root> roots;
  int prev_k = -1;
  double prev_g = 0.0;
  for (int k = 1; k < Z; ++k) {
    const double g = gradient.g[k];
    if (g == 0.0) continue;
    if (prev_k >= 0 && (g > 0.0) != (prev_g > 0.0)) {
      Root root;
      root.stability = prev_g > 0.0 ? Stability::stable : Stability::unstable;
      if (k == prev_k + 1)
        root.k = prev_k + prev_g / (prev_g - g);
      else
        root.k = 0.5 * ((prev_k + 1) + (k - 1));
      roots.push_back(root);
    }
    prev_k = k;
    prev_g = g;
  }
  return roots;
}

RegimeReport classify_regime(const GradientCurve& gradient, const StationaryDistribution& sigma) {
  const int Z = static_cast<int>(gradient.g.size()) - 1;
  bool any_pos = false, any_neg = false;
  for (int k = 1; k < Z; ++k) {
    any_pos |= gradient.g[k] > 0.0;
    any_neg |= gradient.g[k] < 0.0;
  }
  RegimeReport report;
  report.interior_roots = interior_roots(gradient);
  if (!any_pos && !any_neg) {
    report.regime = Regime::all_defect;
    report.neutral = true;
    return report;
  }
  if (!any_pos) {
    report.regime = Regime::all_defect;
    return report;
  }
  if (!any_neg) {
    report.regime = Regime::all_cooperate;
    return report;
  }
  // Mixed signs: split the stationary mass at the largest unstable root, or
  // at k = 0 when the only crossings are stable (a lone attracting polymorphism).
  double threshold = 0.0;
  for (const Root& r : report.interior_roots)
    if (r.stability == Stability::unstable) threshold = std::max(threshold, r.k);
  MassSplit split;
  split.threshold = threshold;
  const int cut = static_cast<int>(std::floor(threshold));
  for (int k = 0; k <= Z; ++k) (k <= cut ? split.below : split.above) += sigma.sigma[k];
  report.mass_split = split;
  report.regime =
      split.below >= split.above ? Regime::bistable_defect_dominant : Regime::bistable_polymorphic_dominant;
  return report;
}

RegimeReport classify_regime(const Params& p) {
  validate(p);
  const auto ts = build_transition_system(p);
  const auto gradient = gradient_of_selection(p, ts.payoffs);
  return classify_regime(gradient, stationary_closed_form(ts));
}

// -- sweeps -----------------------------------------------------------------

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::r: return "r";
    case Axis::m: return "m";
    case Axis::rm: return "rm";
    case Axis::c: return "c";
    case Axis::p_star: return "p_star";
  }
  return "r";
}

Axis axis_from_string(std::string_view s) {
  if (s == "r") return Axis::r;
  if (s == "m") return Axis::m;
  if (s == "rm" || s == "r*m") return Axis::rm;
  if (s == "c") return Axis::c;
  if (s == "p_star" || s == "p-star") return Axis::p_star;
  throw ValidationError("axis", "unknown axis '" + std::string(s) + "' (expected r, m, rm, c, p_star)");
}

std::vector<double> axis_values(const AxisSpec& spec, int resolution) {
  std::vector<double> v(resolution);
  for (int i = 0; i < resolution; ++i)
    v[i] = resolution == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (resolution - 1);
  if (resolution > 1) v.back() = spec.hi;
  return v;
}

void apply_axis(Params& p, Axis a, double v) {
  switch (a) {
    case Axis::r: p.r = v; break;
    case Axis::m: p.m = v; break;
    case Axis::rm: p.r = p.m = std::sqrt(v); break;
    case Axis::c: p.c = v; break;
    case Axis::p_star: p.p_star = v; break;
  }
}

std::size_t SweepGrid::count(Regime r) const {
  std::size_t n = 0;
  for (const auto& row : cells) n += std::count(row.begin(), row.end(), r);
  return n;
}

Params SweepGrid::cell_params(std::size_t ix, std::size_t iy) const {
  Params p = fixed;
  apply_axis(p, x_axis.axis, x_values.at(ix));
  apply_axis(p, y_axis.axis, y_values.at(iy));
  return p;
}

namespace {

void check_axis(const AxisSpec& a, const char* field) {
  const auto ok = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!ok(a.lo) || !ok(a.hi))
    throw ValidationError(std::string(field), "range of axis '" + std::string(to_string(a.axis)) +
                                                  "' must lie within [0,1]");
}

bool axes_conflict(Axis a, Axis b) {
  if (a == b) return true;
  const auto touches_rm = [](Axis x) { return x == Axis::r || x == Axis::m; };
  return (a == Axis::rm && touches_rm(b)) || (b == Axis::rm && touches_rm(a));
}

}  // namespace

SweepGrid sweep(const Params& fixed, const AxisSpec& x, const AxisSpec& y, int resolution, unsigned threads) {
  validate(fixed);
  if (resolution < 2) throw ValidationError("resolution", "must be >= 2");
  check_axis(x, "x_axis");
  check_axis(y, "y_axis");
  if (axes_conflict(x.axis, y.axis))
    throw ValidationError("y_axis", "axes '" + std::string(to_string(x.axis)) + "' and '" +
                                        std::string(to_string(y.axis)) + "' are not independent");

  SweepGrid grid;
  grid.x_axis = x;
  grid.y_axis = y;
  grid.x_values = axis_values(x, resolution);
  grid.y_values = axis_values(y, resolution);
  grid.fixed = fixed;
  grid.cells.assign(resolution, std::vector<Regime>(resolution, Regime::all_defect));

  const std::size_t total = static_cast<std::size_t>(resolution) * resolution;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < total && !failed; i = next++) {
      const std::size_t ix = i % resolution, iy = i / resolution;
      try {
        grid.cells[iy][ix] = classify_regime(grid.cell_params(ix, iy)).regime;
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return grid;
}

// -- monotonicity scans -----------------------------------------------------

std::string_view to_string(ScanAxis a) {
  switch (a) {
    case ScanAxis::c: return "c";
    case ScanAxis::N: return "N";
    case ScanAxis::rm: return "rm";
  }
  return "c";
}

ScanAxis scan_axis_from_string(std::string_view s) {
  if (s == "c") return ScanAxis::c;
  if (s == "N") return ScanAxis::N;
  if (s == "rm" || s == "r*m") return ScanAxis::rm;
  throw ValidationError("scan.axis", "unknown scan axis '" + std::string(s) + "' (expected c, N, rm)");
}

ScanReport monotonicity_scan(const Params& base, ScanAxis axis, const std::vector<double>& grid, double tol) {
  validate(base);
  if (grid.size() < 2) throw ValidationError("scan.values", "need at least two grid values");
  ScanReport report;
  report.axis = axis;
  report.expected_direction = axis == ScanAxis::rm ? +1 : -1;
  report.grid = grid;
  for (double v : grid) {
    Params p = base;
    switch (axis) {
      case ScanAxis::c: p.c = v; break;
      case ScanAxis::rm: p.r = p.m = std::sqrt(v); break;
      case ScanAxis::N:
        if (v != std::floor(v)) throw ValidationError("scan.values", "N grid values must be integers");
        p.N = static_cast<int>(v);
        break;
    }
    validate(p);
    report.t_plus.push_back(build_transition_system(p).t_plus);
  }
  const int Z = base.Z;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    for (int k = 1; k < Z; ++k) {
      const double delta = report.t_plus[i][k] - report.t_plus[i - 1][k];
      if (report.expected_direction * delta < -tol) {
        ++report.violations;
        if (!report.first_violation) report.first_violation = ScanViolation{k, grid[i], delta};
      } else if (std::abs(delta) <= tol) {
        ++report.flat_steps;
      }
    }
  }
  return report;
}

}  // namespace normdyn
