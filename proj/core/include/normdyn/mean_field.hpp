#pragma once

#include <vector>

#include "normdyn/game.hpp"
#include "normdyn/params.hpp"

namespace normdyn {

struct PayoffPair {
  double cooperator = 0.0;
  double defector = 0.0;
};

/// Population-level payoffs over k = 0..Z cooperators, computed under the
/// weighting selected in Params.
struct MeanPayoffCurve {
  std::vector<double> pi_c;
  std::vector<double> pi_d;
};

/// x_C = k / Z.
double fraction_cooperators(int k, int Z);

/// Binomial(n, x) probabilities for 0..n. Evaluated by multiplicative
/// recurrence outward from the mode, so it neither overflows nor loses the
/// bulk of the mass to underflow for large n.
std::vector<double> binomial_pmf(int n, double x);

/// The printed weighted sums
///   sum_n (n/N)     Binom(N,n;x) pi_C(n)
///   sum_n ((N-n)/N) Binom(N,n;x) pi_D(n)
/// with x = k/Z. These vanish at k = 0 (cooperator) and k = Z (defector).
PayoffPair raw_payoff_sums(int k, const Params& p);
PayoffPair raw_payoff_sums(int k, int Z, const GroupPayoffTable& table);

/// Expected payoff of a focal cooperator (defector) whose N-1 co-members are
/// binomially drawn at fraction x: the raw sums divided by x and 1-x, with
/// their limits at the boundaries.
PayoffPair conditional_payoffs(int k, const Params& p);
PayoffPair conditional_payoffs(int k, int Z, const GroupPayoffTable& table);

/// Dispatches on p.weighting.
PayoffPair mean_payoffs(int k, const Params& p);

MeanPayoffCurve build_mean_payoff_curve(const Params& p);

}  // namespace normdyn
