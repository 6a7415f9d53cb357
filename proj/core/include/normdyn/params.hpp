#pragma once

#include <string_view>

namespace normdyn {

/// How population-level payoffs are formed from the group payoff table.
///  - conditional: expected payoff of a focal individual of each strategy whose
///    N-1 co-members are drawn binomially (the printed sums divided by x_C
///    and 1 - x_C respectively).
///  - printed: the raw binomially weighted sums, unnormalized.
enum class PayoffWeighting { conditional, printed };

std::string_view to_string(PayoffWeighting w);
PayoffWeighting payoff_weighting_from_string(std::string_view s);

/// Full parameter vector of one model instance.
struct Params {
  int Z = 100;          // population size
  int N = 5;            // group size
  double b = 1.0;       // endowment
  double c = 0.05;      // cost, fraction of endowment
  double r = 0.7;       // perceived risk
  double m = 0.7;       // perceived magnitude (fraction of endowment lost)
  double p_star = 0.5;  // critical cooperator fraction
  double lambda = 5.0;  // intensity of selection
  double mu = 0.1;      // mutation rate
  PayoffWeighting weighting = PayoffWeighting::conditional;

  bool operator==(const Params&) const = default;
};

/// Throws ValidationError naming the first field outside its domain.
void validate(const Params& p);

}  // namespace normdyn
