#include "normdyn/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace normdyn {

double fermi_probability(double pi_focal, double pi_role, double lambda) {
  const double a = lambda * (pi_focal - pi_role);
  if (a == 0.0) return 0.5;
  if (a > 0.0) {
    const double e = std::exp(-a);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(a));
}

double selection_factor(int k, int Z) {
  return (static_cast<double>(k) / Z) * (static_cast<double>(Z - k) / (Z - 1));
}

StepProbabilities transition_probabilities(int k, int Z, PayoffPair payoffs, double lambda, double mu) {
  if (k < 0 || k > Z) throw std::out_of_range("k=" + std::to_string(k) + " outside [0, " + std::to_string(Z) + "]");
  const double f = (1.0 - mu) * selection_factor(k, Z);
  StepProbabilities s;
  // A defector focal imitates a cooperator role model, and vice versa.
  if (k < Z) s.plus = f * fermi_probability(payoffs.defector, payoffs.cooperator, lambda) + mu / 2.0;
  if (k > 0) s.minus = f * fermi_probability(payoffs.cooperator, payoffs.defector, lambda) + mu / 2.0;
  s.stay = 1.0 - s.plus - s.minus;
  return s;
}

StepProbabilities transition_probabilities(int k, const Params& p) {
  return transition_probabilities(k, p.Z, mean_payoffs(k, p), p.lambda, p.mu);
}

TransitionSystem build_transition_system(const Params& p) {
  TransitionSystem ts;
  ts.payoffs = build_mean_payoff_curve(p);
  ts.t_plus.resize(p.Z + 1);
  ts.t_minus.resize(p.Z + 1);
  ts.t_zero.resize(p.Z + 1);
  for (int k = 0; k <= p.Z; ++k) {
    const auto s = transition_probabilities(k, p.Z, {ts.payoffs.pi_c[k], ts.payoffs.pi_d[k]}, p.lambda, p.mu);
    ts.t_plus[k] = s.plus;
    ts.t_minus[k] = s.minus;
    ts.t_zero[k] = s.stay;
  }
  return ts;
}

void propagate(const TransitionSystem& ts, const std::vector<double>& in, std::vector<double>& out) {
  const int Z = ts.population();
  out.assign(Z + 1, 0.0);
  for (int k = 0; k <= Z; ++k) {
    double v = in[k] * ts.t_zero[k];
    if (k > 0) v += in[k - 1] * ts.t_plus[k - 1];
    if (k < Z) v += in[k + 1] * ts.t_minus[k + 1];
    out[k] = v;
  }
}

std::vector<double> dense_transition_matrix(const TransitionSystem& ts) {
  const int n = ts.population() + 1;
  std::vector<double> T(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    T[k * n + k] = ts.t_zero[k];
    if (k + 1 < n) T[k * n + k + 1] = ts.t_plus[k];
    if (k > 0) T[k * n + k - 1] = ts.t_minus[k];
  }
  return T;
}

}  // namespace normdyn
