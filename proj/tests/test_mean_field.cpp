#include "doctest.h"
#include "normdyn/mean_field.hpp"
#include "oracle.hpp"

#include <cmath>
#include <numeric>

using namespace normdyn;

namespace {
Params small(PayoffWeighting w = PayoffWeighting::printed) {
  Params p;
  p.Z = 4;
  p.N = 2;
  p.b = 1.0;
  p.c = 0.2;
  p.r = p.m = 1.0;
  p.p_star = 0.5;
  p.weighting = w;
  return p;
}
}  // namespace

TEST_CASE("fraction of cooperators") {
  CHECK(fraction_cooperators(0, 100) == 0.0);
  CHECK(fraction_cooperators(100, 100) == 1.0);
  CHECK(fraction_cooperators(50, 100) == 0.5);
  CHECK_THROWS(fraction_cooperators(101, 100));
}

TEST_CASE("binomial pmf") {
  for (int n : {0, 1, 5, 20, 64, 300}) {
    for (double x : {0.0, 0.01, 0.3, 0.5, 0.97, 1.0}) {
      const auto w = binomial_pmf(n, x);
      CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  const auto w = binomial_pmf(4, 0.25);
  CHECK(w[0] == doctest::Approx(81.0 / 256).epsilon(1e-14));
  CHECK(w[2] == doctest::Approx(6.0 * 9 / 256).epsilon(1e-14));
}

TEST_CASE("printed sums at Z=4, N=2, k=2 match hand enumeration") {
  // x = 1/2, n* = 1, pi_C = (-0.2, 0.8, 0.8), pi_D = (0, 1, 1):
  //   Pi_C = 1/2 * 1/2 * 0.8 + 1 * 1/4 * 0.8 = 0.4
  //   Pi_D = 1 * 1/4 * 0 + 1/2 * 1/2 * 1 = 0.25
  const auto raw = raw_payoff_sums(2, small());
  CHECK(raw.cooperator == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(raw.defector == doctest::Approx(0.25).epsilon(1e-15));
  // Focal-conditional: Pi_C = E[pi_C(1 + Bin(1,1/2))] = 0.8, Pi_D = E[pi_D(Bin(1,1/2))] = 0.5.
  const auto cond = conditional_payoffs(2, small());
  CHECK(cond.cooperator == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(cond.defector == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("boundary values") {
  Params p = small();
  p.Z = 10;
  p.N = 4;
  const auto t = build_group_payoff_table(p);
  const auto at0 = raw_payoff_sums(0, p);
  CHECK(at0.cooperator == 0.0);
  CHECK(at0.defector == doctest::Approx(t.pi_d[0]));
  const auto atZ = raw_payoff_sums(p.Z, p);
  CHECK(atZ.cooperator == doctest::Approx(t.pi_c[p.N]));
  CHECK(atZ.defector == 0.0);

  const auto c0 = conditional_payoffs(0, p);
  CHECK(c0.cooperator == doctest::Approx(t.pi_c[1]));
  CHECK(c0.defector == doctest::Approx(t.pi_d[0]));
}

TEST_CASE("N=1 closed form") {
  Params p = small();
  p.Z = 10;
  p.N = 1;
  const auto t = build_group_payoff_table(p);
  for (int k = 0; k <= p.Z; ++k) {
    const double x = k / 10.0;
    const auto raw = raw_payoff_sums(k, p);
    CHECK(raw.cooperator == doctest::Approx(x * t.pi_c[1]).epsilon(1e-15));
    CHECK(raw.defector == doctest::Approx((1 - x) * t.pi_d[0]).epsilon(1e-15));
  }
}

TEST_CASE("curve invariants") {
  Params p;
  p.weighting = PayoffWeighting::printed;
  const auto curve = build_mean_payoff_curve(p);
  REQUIRE(curve.pi_c.size() == static_cast<std::size_t>(p.Z + 1));
  CHECK(curve.pi_c[0] == 0.0);
  CHECK(curve.pi_d[p.Z] == 0.0);
  for (int k = 0; k <= p.Z; ++k) {
    CHECK(std::isfinite(curve.pi_c[k]));
    CHECK(std::isfinite(curve.pi_d[k]));
  }

  SUBCASE("collapsed payoff branches") {
    Params q;
    q.c = 0.0;
    q.r = 0.0;
    q.weighting = PayoffWeighting::printed;
    const auto flat = build_mean_payoff_curve(q);
    for (int k = 0; k <= q.Z; ++k) {
      const double x = k / static_cast<double>(q.Z);
      CHECK(flat.pi_c[k] == doctest::Approx(x * q.b).epsilon(1e-12));
      CHECK(flat.pi_d[k] == doctest::Approx((1 - x) * q.b).epsilon(1e-12));
    }
  }
}

TEST_CASE("cooperator payoff is nondecreasing in k when r*m > 0") {
  for (auto w : {PayoffWeighting::printed, PayoffWeighting::conditional}) {
    for (int N : {2, 5, 9}) {
      for (double ps : {0.2, 0.5, 0.8}) {
        Params p;
        p.N = N;
        p.p_star = ps;
        p.weighting = w;
        const auto curve = build_mean_payoff_curve(p);
        for (int k = 1; k <= p.Z; ++k) CHECK(curve.pi_c[k] >= curve.pi_c[k - 1] - 1e-15);
      }
    }
  }
}

TEST_CASE("conditional payoffs are the printed sums divided by x and 1-x") {
  Params p;
  p.N = 7;
  for (int k = 1; k < p.Z; ++k) {
    const double x = k / static_cast<double>(p.Z);
    const auto raw = raw_payoff_sums(k, p);
    const auto cond = conditional_payoffs(k, p);
    CHECK(cond.cooperator == doctest::Approx(raw.cooperator / x).epsilon(1e-12));
    CHECK(cond.defector == doctest::Approx(raw.defector / (1 - x)).epsilon(1e-12));
  }
}

TEST_CASE("both weightings match exhaustive enumeration for small N and Z") {
  for (auto w : {PayoffWeighting::printed, PayoffWeighting::conditional}) {
    for (int Z = 2; Z <= 12; ++Z) {
      for (int N = 1; N <= std::min(6, Z); ++N) {
        Params p;
        p.Z = Z;
        p.N = N;
        p.c = 0.15;
        p.r = 0.6;
        p.m = 0.9;
        p.p_star = 0.4;
        p.weighting = w;
        for (int k = 0; k <= Z; ++k) {
          const auto got = mean_payoffs(k, p);
          const auto [pc, pd] = oracle::enumerate(k, p);
          CHECK(std::abs(got.cooperator - pc) <= 1e-12);
          CHECK(std::abs(got.defector - pd) <= 1e-12);
        }
      }
    }
  }
}
