#include "doctest.h"
#include "normdyn/errors.hpp"
#include "normdyn/game.hpp"

#include <random>

using namespace normdyn;

namespace {
Params with(double p_star, int N) {
  Params p;
  p.p_star = p_star;
  p.N = N;
  return p;
}
}  // namespace

TEST_CASE("critical threshold is the ceiling of p* N") {
  CHECK(critical_threshold(with(0.5, 10)) == 5);
  CHECK(critical_threshold(with(0.5, 5)) == 3);
  CHECK(critical_threshold(with(0.0, 20)) == 0);
  CHECK(critical_threshold(with(1.0, 7)) == 7);
  CHECK(critical_threshold(with(0.3, 10)) == 3);
  CHECK(critical_threshold(with(0.7, 10)) == 7);
}

TEST_CASE("cooperator payoff branches") {
  Params p;
  p.b = 1.0;
  p.c = 0.1;
  p.N = 10;
  p.p_star = 0.5;
  p.r = 0.3;
  p.m = 0.9;
  CHECK(payoff_cooperator(5, p) == doctest::Approx(0.9).epsilon(1e-15));

  p.r = p.m = 1.0;
  CHECK(payoff_cooperator(4, p) == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(payoff_defector(4, p) == doctest::Approx(0.0));
  CHECK(payoff_defector(7, p) == doctest::Approx(1.0).epsilon(1e-15));

  p.r = p.m = 0.5;
  p.c = 0.0;
  CHECK(payoff_cooperator(0, p) == doctest::Approx(0.75).epsilon(1e-15));
  for (int n = 0; n <= p.N; ++n) CHECK(payoff_defector(n, p) == payoff_cooperator(n, p));
}

TEST_CASE("meeting the threshold exactly counts as success") {
  Params p = with(0.5, 4);
  p.r = p.m = 1.0;
  p.c = 0.0;
  CHECK(payoff_cooperator(2, p) == 1.0);
  CHECK(payoff_cooperator(1, p) == 0.0);
}

TEST_CASE("out-of-range group composition is rejected") {
  Params p = with(0.5, 4);
  CHECK_THROWS_AS(payoff_cooperator(-1, p), std::out_of_range);
  CHECK_THROWS_AS(payoff_defector(5, p), std::out_of_range);
}

TEST_CASE("payoff table layout") {
  SUBCASE("N=2 threshold in the middle") {
    Params p = with(0.5, 2);
    p.r = p.m = 1.0;
    const auto t = build_group_payoff_table(p);
    CHECK(t.n_star == 1);
    REQUIRE(t.pi_c.size() == 3);
    CHECK(t.pi_c[0] < t.pi_c[1]);
    CHECK(t.pi_c[1] == t.pi_c[2]);
  }
  SUBCASE("no failure penalty gives a flat table") {
    Params p = with(0.5, 6);
    p.r = 0.0;
    p.c = 0.2;
    const auto t = build_group_payoff_table(p);
    for (double v : t.pi_c) CHECK(v == doctest::Approx(p.b * (1 - p.c)));
  }
  SUBCASE("a lone cooperator succeeds, a lone defector fails") {
    Params p = with(0.5, 1);
    p.r = p.m = 1.0;
    p.c = 0.1;
    const auto t = build_group_payoff_table(p);
    CHECK(t.n_star == 1);
    CHECK(t.pi_c[1] == doctest::Approx(0.9));
    CHECK(t.pi_d[0] == doctest::Approx(0.0));
  }
}

TEST_CASE("payoff table invariants over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> group(1, 30);
  for (int trial = 0; trial < 500; ++trial) {
    Params p;
    p.N = group(rng);
    p.b = 0.1 + 5 * unit(rng);
    p.c = unit(rng);
    p.r = unit(rng);
    p.m = unit(rng);
    p.p_star = unit(rng);
    const auto t = build_group_payoff_table(p);
    int distinct = 1;
    for (int n = 0; n <= p.N; ++n) {
      CHECK(t.pi_d[n] - t.pi_c[n] == doctest::Approx(p.c * p.b).epsilon(1e-12));
      if (n > 0) {
        CHECK(t.pi_c[n] >= t.pi_c[n - 1]);
        if (t.pi_c[n] != t.pi_c[n - 1]) ++distinct;
      }
    }
    if (p.r * p.m > 0 && t.n_star > 0) {
      CHECK(distinct == 2);
      CHECK(t.pi_c[p.N] - t.pi_c[0] == doctest::Approx(p.b * p.r * p.m).epsilon(1e-12));
      CHECK(t.pi_d[p.N] - t.pi_d[0] == doctest::Approx(p.b * p.r * p.m).epsilon(1e-12));
    } else {
      CHECK(distinct == 1);
    }
    Params dearer = p;
    dearer.c = p.c + 0.01;
    for (int n = 0; n <= p.N; ++n) CHECK(payoff_cooperator(n, dearer) < payoff_cooperator(n, p));
  }
}

TEST_CASE("parameter validation names the field") {
  Params p;
  CHECK_NOTHROW(validate(p));
  p.mu = 1.5;
  try {
    validate(p);
    FAIL("expected rejection");
  } catch (const ValidationError& e) {
    CHECK(e.field() == "params.mu");
    CHECK(std::string(e.what()).find("[0,1]") != std::string::npos);
  }
  p = Params{};
  p.N = p.Z + 1;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = Params{};
  p.N = p.Z;
  CHECK_NOTHROW(validate(p));
  p = Params{};
  p.b = 0.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = Params{};
  p.lambda = -1.0;
  CHECK_THROWS_AS(validate(p), ValidationError);
  p = Params{};
  p.Z = 1;
  p.N = 1;
  CHECK_THROWS_AS(validate(p), ValidationError);
}

TEST_CASE("reference defaults") {
  const Params p;
  CHECK(p.Z == 100);
  CHECK(p.b == 1.0);
  CHECK(p.lambda == 5.0);
  CHECK(p.mu == 0.1);
}
