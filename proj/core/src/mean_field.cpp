#include "normdyn/mean_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace normdyn {

double fraction_cooperators(int k, int Z) {
  if (Z <= 0 || k < 0 || k > Z)
    throw std::out_of_range("k=" + std::to_string(k) + " outside [0, " + std::to_string(Z) + "]");
  return static_cast<double>(k) / static_cast<double>(Z);
}

std::vector<double> binomial_pmf(int n, double x) {
  if (n < 0) throw std::invalid_argument("binomial_pmf: negative n");
  std::vector<double> pmf(n + 1, 0.0);
  if (x <= 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (x >= 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  int mode = static_cast<int>(std::floor((n + 1) * x));
  if (mode > n) mode = n;
  const double log_mode = std::lgamma(n + 1.0) - std::lgamma(mode + 1.0) - std::lgamma(n - mode + 1.0) +
                          mode * std::log(x) + (n - mode) * std::log1p(-x);
  pmf[mode] = std::exp(log_mode);
  const double odds = x / (1.0 - x);
  for (int j = mode; j < n; ++j) pmf[j + 1] = pmf[j] * (n - j) / (j + 1.0) * odds;
  for (int j = mode; j > 0; --j) pmf[j - 1] = pmf[j] * j / (n - j + 1.0) / odds;
  return pmf;
}

PayoffPair raw_payoff_sums(int k, int Z, const GroupPayoffTable& table) {
  const int N = static_cast<int>(table.pi_c.size()) - 1;
  const auto w = binomial_pmf(N, fraction_cooperators(k, Z));
  PayoffPair out;
  for (int n = 0; n <= N; ++n) {
    out.cooperator += (static_cast<double>(n) / N) * w[n] * table.pi_c[n];
    out.defector += (static_cast<double>(N - n) / N) * w[n] * table.pi_d[n];
  }
  return out;
}

PayoffPair raw_payoff_sums(int k, const Params& p) { return raw_payoff_sums(k, p.Z, build_group_payoff_table(p)); }

PayoffPair conditional_payoffs(int k, int Z, const GroupPayoffTable& table) {
  // (n/N) Binom(N,n;x) = x Binom(N-1,n-1;x), so dividing the raw cooperator
  // sum by x leaves a Binom(N-1) expectation over the focal's co-members.
  const int N = static_cast<int>(table.pi_c.size()) - 1;
  const auto w = binomial_pmf(N - 1, fraction_cooperators(k, Z));
  PayoffPair out;
  for (int j = 0; j < N; ++j) {
    out.cooperator += w[j] * table.pi_c[j + 1];
    out.defector += w[j] * table.pi_d[j];
  }
  return out;
}

PayoffPair conditional_payoffs(int k, const Params& p) {
  return conditional_payoffs(k, p.Z, build_group_payoff_table(p));
}

PayoffPair mean_payoffs(int k, const Params& p) {
  return p.weighting == PayoffWeighting::printed ? raw_payoff_sums(k, p) : conditional_payoffs(k, p);
}

MeanPayoffCurve build_mean_payoff_curve(const Params& p) {
  const auto table = build_group_payoff_table(p);
  MeanPayoffCurve curve;
  curve.pi_c.resize(p.Z + 1);
  curve.pi_d.resize(p.Z + 1);
  for (int k = 0; k <= p.Z; ++k) {
    const auto pair = p.weighting == PayoffWeighting::printed ? raw_payoff_sums(k, p.Z, table)
                                                              : conditional_payoffs(k, p.Z, table);
    curve.pi_c[k] = pair.cooperator;
    curve.pi_d[k] = pair.defector;
  }
  return curve;
}

}  // namespace normdyn
