#include "normdyn/params.hpp"

#include <cmath>
#include <string>

#include "normdyn/errors.hpp"

namespace normdyn {

std::string_view to_string(PayoffWeighting w) {
  return w == PayoffWeighting::printed ? "printed" : "conditional";
}

PayoffWeighting payoff_weighting_from_string(std::string_view s) {
  if (s == "conditional") return PayoffWeighting::conditional;
  if (s == "printed") return PayoffWeighting::printed;
  throw ValidationError("params.weighting", "expected 'conditional' or 'printed', got '" + std::string(s) + "'");
}

namespace {

void require_unit(double v, const char* field) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw ValidationError(std::string("params.") + field,
                          "must lie in [0,1], got " + std::to_string(v));
}

}  // namespace

void validate(const Params& p) {
  if (p.Z < 2) throw ValidationError("params.Z", "must be >= 2, got " + std::to_string(p.Z));
  if (p.N < 1 || p.N > p.Z)
    throw ValidationError("params.N", "must satisfy 1 <= N <= Z, got N=" + std::to_string(p.N) +
                                          " with Z=" + std::to_string(p.Z));
  if (!std::isfinite(p.b) || p.b <= 0.0)
    throw ValidationError("params.b", "must be > 0, got " + std::to_string(p.b));
  require_unit(p.c, "c");
  require_unit(p.r, "r");
  require_unit(p.m, "m");
  require_unit(p.p_star, "p_star");
  require_unit(p.mu, "mu");
  if (!std::isfinite(p.lambda) || p.lambda < 0.0)
    throw ValidationError("params.lambda", "must be >= 0, got " + std::to_string(p.lambda));
}

}  // namespace normdyn
