#pragma once

#include <vector>

#include "normdyn/mean_field.hpp"
#include "normdyn/params.hpp"

namespace normdyn {

/// Probability that a focal individual imitates a role model under the
/// Fermi rule: 1 / (1 + exp(lambda * (pi_focal - pi_role))). Exactly 0.5 on
/// payoff ties and for lambda = 0.
double fermi_probability(double pi_focal, double pi_role, double lambda);

struct StepProbabilities {
  double plus = 0.0;   // k -> k+1
  double minus = 0.0;  // k -> k-1
  double stay = 0.0;   // k -> k
};

/// Tridiagonal birth-death chain on k = 0..Z cooperators. t_plus[Z] and
/// t_minus[0] are clamped to zero; the clamped mutation mass stays in t_zero.
struct TransitionSystem {
  std::vector<double> t_plus;
  std::vector<double> t_minus;
  std::vector<double> t_zero;
  MeanPayoffCurve payoffs;

  int population() const { return static_cast<int>(t_plus.size()) - 1; }
};

/// k (Z-k) / (Z (Z-1)): probability that a uniformly drawn focal and a
/// distinct role model hold different, ordered strategies.
double selection_factor(int k, int Z);

StepProbabilities transition_probabilities(int k, const Params& p);

/// Same, given the mean payoffs at k already computed.
StepProbabilities transition_probabilities(int k, int Z, PayoffPair payoffs, double lambda, double mu);

TransitionSystem build_transition_system(const Params& p);

/// One step of a row distribution through the chain: out = in * T.
void propagate(const TransitionSystem& ts, const std::vector<double>& in, std::vector<double>& out);

/// Dense (Z+1)x(Z+1) row-stochastic matrix, row-major. For small chains and
/// tests only.
std::vector<double> dense_transition_matrix(const TransitionSystem& ts);

}  // namespace normdyn
