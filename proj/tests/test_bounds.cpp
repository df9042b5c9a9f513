#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqnd/bounds.hpp"

using namespace cqnd;
using namespace cqnd::bounds;

TEST_CASE("feasible regions") {
  CHECK(nc_region_contains(0.75, 0.0, 0.25));
  CHECK_FALSE(nc_region_contains(0.5, 0.5, 0.25));
  CHECK(nc_region_contains(0.0, 0.0, 0.9));

  CHECK(q_region_contains(0.5, 0.5, 0.25));
  CHECK_FALSE(q_region_contains(0.75, 0.75, 0.25));
  CHECK(q_region_contains(0.0, 0.0, 1.0));
}

TEST_CASE("usd bounds") {
  CHECK(nc_usd_max(0.5, 0.25) == doctest::Approx(0.375));
  CHECK(nc_usd_max(0.7, 0.0) == doctest::Approx(0.7));
  CHECK(nc_usd_max(0.5, 1.0) == doctest::Approx(0.0));

  CHECK(q_usd_max(0.5, 0.25) == doctest::Approx(0.5));
  CHECK(q_usd_max(0.99, 0.25) == doctest::Approx(0.7425));
  CHECK(q_usd_max(0.5, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("sequential bounds") {
  CHECK(nc_susd_max(0.5, 0.04, 2) == doctest::Approx(0.32));
  CHECK(nc_susd_max(0.8, 0.0, 3) == doctest::Approx(0.8));
  CHECK(nc_susd_max(0.5, 1.0, 3) == doctest::Approx(0.0));
  CHECK(nc_susd_max(0.6, 0.3, 1) == doctest::Approx(nc_usd_max(0.6, 0.3)));

  CHECK(q_susd_max_equal(0.04, 2) ==
        doctest::Approx(std::pow(1.0 - std::pow(0.04, 0.25), 2)).epsilon(1e-12));
  CHECK(q_susd_max_equal(0.04, 2) == doctest::Approx(0.305573).epsilon(1e-5));
  CHECK(q_susd_max_equal(0.64, 2) == doctest::Approx(0.02));
  CHECK(q_susd_max_equal(0.0, 3) == doctest::Approx(1.0));
}

TEST_CASE("cloning bounds") {
  CHECK(nc_clone1_max(0.5, 0.25) == doctest::Approx(0.375));
  CHECK(nc_clone1_max(0.6, 0.0) == doctest::Approx(0.6));
  CHECK(nc_clone1_max(0.5, 1.0) == doctest::Approx(0.0));

  CHECK(nc_clone2_max(0.5, 0.25, 1, 2) == doctest::Approx(0.4));
  CHECK(nc_clone2_max(0.7, 0.0, 2, 3) == doctest::Approx(0.7));
  CHECK(nc_clone2_max(0.5, 0.3, 2, 2) == doctest::Approx(0.5));
  // (1,2) reduction: max{q}/(1+c).
  CHECK(nc_clone2_max(0.5, 0.25, 1, 2) == doctest::Approx(0.5 / 1.25));
  // c -> 1 continuity limit n/m.
  CHECK(nc_clone2_max(0.5, 1.0, 1, 2) == doctest::Approx(0.25));

  CHECK(q_clone2_max_equal(0.25, 1, 2) == doctest::Approx(2.0 / 3.0));
  CHECK(q_clone2_max_equal(0.0, 1, 3) == doctest::Approx(1.0));
  CHECK(q_clone2_max_equal(0.4, 2, 2) == doctest::Approx(1.0));

  CHECK(q_clone2_max_imbalanced(0.99, 0.25, 1) == doctest::Approx(0.7425));
  CHECK(q_clone2_max_imbalanced(1.0, 0.3, 2) == doctest::Approx(1.0 - 0.09));
  CHECK(q_clone2_max_imbalanced(0.99, 0.0, 2) == doctest::Approx(0.99));
}

TEST_CASE("regime classification") {
  TaskParams p;
  SUBCASE("usd equal priors is contextual") {
    p.q1 = 0.5;
    p.c = 0.25;
    const Regime r = regime_classify(Task::Usd, p);
    CHECK(r.label == RegimeLabel::Contextual);
    CHECK(r.margin == doctest::Approx(0.125));
  }
  SUBCASE("susd at c = 0.04 is noncontextual") {
    p.q1 = 0.5;
    p.c = 0.04;
    p.N = 2;
    const Regime r = regime_classify(Task::Susd, p);
    CHECK(r.label == RegimeLabel::Noncontextual);
    CHECK(r.margin == doctest::Approx(-0.014427).epsilon(1e-4));
  }
  SUBCASE("pqc2 equal priors is contextual") {
    p.q1 = 0.5;
    p.c = 0.25;
    p.n = 1;
    p.m = 2;
    const Regime r = regime_classify(Task::Pqc2, p);
    CHECK(r.label == RegimeLabel::Contextual);
    CHECK(r.margin == doctest::Approx(2.0 / 3.0 - 0.4));
  }
  SUBCASE("susd with unequal priors is unsupported") {
    p.q1 = 0.7;
    p.c = 0.1;
    p.N = 2;
    CHECK_THROWS_AS(regime_classify(Task::Susd, p), UnsupportedCombination);
  }
}

TEST_CASE("monotonicity in c") {
  for (double q1 : {0.5, 0.7, 0.9}) {
    double prev_nc = 2.0, prev_q = 2.0, prev_s = 2.0, prev_cl = 2.0;
    for (int i = 0; i <= 50; ++i) {
      const double c = static_cast<double>(i) / 50.0;
      CHECK(nc_usd_max(q1, c) <= prev_nc + 1e-12);
      CHECK(q_usd_max(q1, c) <= prev_q + 1e-12);
      CHECK(nc_susd_max(q1, c, 3) <= prev_s + 1e-12);
      CHECK(nc_clone2_max(q1, c, 1, 2) <= prev_cl + 1e-12);
      prev_nc = nc_usd_max(q1, c);
      prev_q = q_usd_max(q1, c);
      prev_s = nc_susd_max(q1, c, 3);
      prev_cl = nc_clone2_max(q1, c, 1, 2);
    }
  }
}

TEST_CASE("pqc2 regime inequalities") {
  for (int i = 1; i < 50; ++i) {
    const double c = static_cast<double>(i) / 50.0;
    // Equal priors: quantum strictly above the noncontextual value.
    CHECK(q_clone2_max_equal(c, 1, 2) >= nc_clone2_max(0.5, c, 1, 2) - 1e-12);
    CHECK(q_clone2_max_equal(c, 1, 3) >= nc_clone2_max(0.5, c, 1, 3) - 1e-12);
    // Extreme imbalance: noncontextual wins.
    CHECK(nc_clone2_max(0.99, c, 1, 2) >= q_clone2_max_imbalanced(0.99, c, 1) - 1e-12);
  }
}

TEST_CASE("task names") {
  for (Task t : {Task::Usd, Task::Susd, Task::Pqc1, Task::Pqc2}) {
    CHECK(parse_task(task_name(t)) == t);
  }
  CHECK_THROWS_AS(parse_task("nope"), InvalidArgument);
}
