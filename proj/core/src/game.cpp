#include "normdyn/game.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace normdyn {

int critical_threshold(const Params& p) {
  // The epsilon keeps products such as 0.3 * 10 from rounding up past the
  // integer they represent.
  const double scaled = p.p_star * p.N;
  int n_star = static_cast<int>(std::ceil(scaled - 1e-9));
  if (n_star < 0) n_star = 0;
  if (n_star > p.N) n_star = p.N;
  return n_star;
}

double payoff_cooperator(int n_c, const Params& p) {
  if (n_c < 0 || n_c > p.N)
    throw std::out_of_range("n_c=" + std::to_string(n_c) + " outside [0, " + std::to_string(p.N) + "]");
  const bool success = n_c >= critical_threshold(p);
  const double kept = success ? p.b : p.b * (1.0 - p.r * p.m);
  return kept - p.c * p.b;
}

double payoff_defector(int n_c, const Params& p) { return payoff_cooperator(n_c, p) + p.c * p.b; }

GroupPayoffTable build_group_payoff_table(const Params& p) {
  GroupPayoffTable t;
  t.n_star = critical_threshold(p);
  t.pi_c.resize(p.N + 1);
  t.pi_d.resize(p.N + 1);
  const double success = p.b - p.c * p.b;
  const double failure = p.b * (1.0 - p.r * p.m) - p.c * p.b;
  for (int n = 0; n <= p.N; ++n) {
    t.pi_c[n] = n >= t.n_star ? success : failure;
    t.pi_d[n] = t.pi_c[n] + p.c * p.b;
  }
  return t;
}

}  // namespace normdyn
