#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "normdyn/params.hpp"

namespace normdyn {

/// Payoffs used when a focal individual compares itself with a role model.
///  - mean_field: the population mean payoffs at the current state.
///  - sampled_groups: realized payoffs from freshly assembled random groups
///    (an extension; the analytic chain has no counterpart).
enum class SimMode { mean_field, sampled_groups };

/// How a mutation event changes the population.
///  - chain_matched: with equal odds, one uniformly chosen defector becomes a
///    cooperator or one cooperator becomes a defector (no-op if there is none).
///    Reproduces the mu/2 terms of the analytic chain.
///  - focal_random: the focal individual adopts a uniformly random strategy.
enum class MutationScheme { chain_matched, focal_random };

std::string_view to_string(SimMode m);
SimMode sim_mode_from_string(std::string_view s);
std::string_view to_string(MutationScheme m);
MutationScheme mutation_scheme_from_string(std::string_view s);

inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

struct SimConfig {
  Params params;
  long steps = 1'000'000;  // update events, including burn-in
  long burn_in = 0;
  std::uint64_t seed = 1;
  SimMode mode = SimMode::mean_field;
  MutationScheme mutation = MutationScheme::chain_matched;
  int initial_cooperators = -1;  // -1: Z / 2
  int group_draws = 1;           // sampled_groups: groups averaged per payoff
  std::vector<int> thresholds;   // crossing counts are reported for these k
};

/// Throws ValidationError.
void validate(const SimConfig& cfg);

struct SimResult {
  /// Fraction of post-burn-in events that ended at each k = 0..Z.
  std::vector<double> occupancy;
  int final_state = 0;
  double mean_k = 0.0;
  /// crossings[i]: number of times the state moved across thresholds[i]
  /// (from below to >= or back) after burn-in.
  std::vector<long> crossings;

  bool operator==(const SimResult&) const = default;
};

SimResult run_simulation(const SimConfig& cfg);

/// Independent trajectories seeded from (cfg.seed, replicate index), run on
/// up to `threads` workers and merged by averaging occupancy. Deterministic
/// for a given replicate count regardless of thread count.
SimResult run_replicates(const SimConfig& cfg, int replicates, unsigned threads = 0);

/// Total-variation distance, 0.5 * sum |a_k - b_k|.
double total_variation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace normdyn
