#pragma once

#include <vector>

#include "normdyn/params.hpp"

namespace normdyn {

/// Per-group payoffs of the threshold collective-risk game, indexed by the
/// number of cooperators in the group, n_C = 0..N.
struct GroupPayoffTable {
  int n_star = 0;
  std::vector<double> pi_c;
  std::vector<double> pi_d;
};

/// n* = ceil(p* N), the number of cooperators a group needs to succeed.
int critical_threshold(const Params& p);

/// Cooperator payoff in a group with n_c cooperators. A group that exactly
/// meets the threshold succeeds. Throws std::out_of_range if n_c is not in [0, N].
double payoff_cooperator(int n_c, const Params& p);

/// Defector payoff: the cooperator payoff plus the saved contribution c*b.
double payoff_defector(int n_c, const Params& p);

GroupPayoffTable build_group_payoff_table(const Params& p);

}  // namespace normdyn
