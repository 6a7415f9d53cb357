#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "normdyn/dynamics.hpp"
#include "normdyn/params.hpp"

namespace normdyn {

/// G(k) = T+(k) - T-(k) over k = 0..Z.
struct GradientCurve {
  std::vector<double> g;
};

struct StationaryDistribution {
  std::vector<double> sigma;
};

enum class Regime { all_defect, bistable_defect_dominant, bistable_polymorphic_dominant, all_cooperate };

std::string_view to_string(Regime r);
Regime regime_from_string(std::string_view s);

enum class Stability { stable, unstable };

std::string_view to_string(Stability s);

struct Root {
  double k = 0.0;  // interpolated crossing, in units of cooperators
  Stability stability = Stability::stable;
};

struct MassSplit {
  double below = 0.0;  // stationary mass on k <= floor(threshold)
  double above = 0.0;
  double threshold = 0.0;
};

struct RegimeReport {
  Regime regime = Regime::all_defect;
  bool neutral = false;  // G vanishes on every interior state
  std::vector<Root> interior_roots;
  std::optional<MassSplit> mass_split;
};

/// (1-mu) k(Z-k)/(Z(Z-1)) tanh(lambda/2 (Pi_C - Pi_D)); the mutation terms
/// cancel in T+ - T- on interior states.
GradientCurve gradient_of_selection(const Params& p);
GradientCurve gradient_of_selection(const Params& p, const MeanPayoffCurve& payoffs);

/// sigma_k proportional to prod_{j=1..k} T+(j-1)/T-(j), normalized over all
/// Z+1 states in log space. Throws NonErgodicError if a needed rate is zero.
StationaryDistribution stationary_closed_form(const Params& p);
StationaryDistribution stationary_closed_form(const TransitionSystem& ts);

struct PowerIterationOptions {
  double tol = 1e-14;
  long max_steps = 50'000'000;
  int initial_state = 0;  // all mass starts here
};

/// Pushes a row distribution through T until successive iterates differ by
/// less than tol in max-norm. Throws ConvergenceError after max_steps.
StationaryDistribution stationary_power_iteration(const Params& p, const PowerIterationOptions& opts = {});
StationaryDistribution stationary_power_iteration(const TransitionSystem& ts, const PowerIterationOptions& opts);

/// Sign changes of G between consecutive interior states. Zero runs flanked
/// by opposite signs count as one crossing at the run's midpoint.
std::vector<Root> interior_roots(const GradientCurve& gradient);

RegimeReport classify_regime(const Params& p);

/// Regime from an already computed gradient and stationary law.
RegimeReport classify_regime(const GradientCurve& gradient, const StationaryDistribution& sigma);

// -- sweeps -----------------------------------------------------------------

enum class Axis { r, m, rm, c, p_star };

std::string_view to_string(Axis a);
Axis axis_from_string(std::string_view s);

struct AxisSpec {
  Axis axis = Axis::r;
  double lo = 0.0;
  double hi = 1.0;
};

/// Uniformly spaced values from lo to hi inclusive.
std::vector<double> axis_values(const AxisSpec& spec, int resolution);

/// Sets the axis parameter; an r*m product is realized as r = m = sqrt(v).
void apply_axis(Params& p, Axis a, double v);

struct SweepGrid {
  AxisSpec x_axis;
  AxisSpec y_axis;
  std::vector<double> x_values;
  std::vector<double> y_values;
  /// cells[iy][ix]
  std::vector<std::vector<Regime>> cells;
  Params fixed;

  std::size_t count(Regime r) const;
  Params cell_params(std::size_t ix, std::size_t iy) const;
};

inline constexpr int kDefaultSweepResolution = 21;

/// Throws ValidationError for equal or conflicting axes, ranges outside
/// [0,1], or resolution < 2. Cells are evaluated on `threads` workers
/// (0 = hardware concurrency); the result does not depend on the count.
SweepGrid sweep(const Params& fixed, const AxisSpec& x, const AxisSpec& y, int resolution = kDefaultSweepResolution,
                unsigned threads = 0);

// -- monotonicity scans -----------------------------------------------------

enum class ScanAxis { c, N, rm };

std::string_view to_string(ScanAxis a);
ScanAxis scan_axis_from_string(std::string_view s);

struct ScanViolation {
  int k = 0;
  double value = 0.0;  // grid value at which T+(k) moved the wrong way
  double delta = 0.0;  // signed change in T+(k) from the previous grid value
};

struct ScanReport {
  ScanAxis axis = ScanAxis::c;
  int expected_direction = -1;  // +1 increasing, -1 decreasing
  std::vector<double> grid;
  /// t_plus[i][k]: T+(k) at grid[i]
  std::vector<std::vector<double>> t_plus;
  std::size_t violations = 0;
  std::size_t flat_steps = 0;
  std::optional<ScanViolation> first_violation;

  bool holds() const { return violations == 0; }
};

inline constexpr double kScanTolerance = 1e-12;

/// Evaluates T+(k) at every interior k across the grid and checks the
/// expected direction: decreasing in c, decreasing in N, increasing in r*m.
/// A step is a violation when it moves against that direction by more than
/// `tol`.
ScanReport monotonicity_scan(const Params& base, ScanAxis axis, const std::vector<double>& grid,
                             double tol = kScanTolerance);

}  // namespace normdyn
