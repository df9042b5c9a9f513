#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqnd/bounds.hpp"
#include "cqnd/oracle.hpp"

using namespace cqnd;
using namespace cqnd::oracle;

TEST_CASE("usd_nc_oracle") {
  CHECK(usd_nc_oracle(0.5, 0.25) == doctest::Approx(0.375));
  CHECK(usd_nc_oracle(1.0, 0.3) == doctest::Approx(0.7));
  CHECK(usd_nc_oracle(0.5, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("usd_quantum_oracle") {
  CHECK(usd_quantum_oracle(0.5, 0.25) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(usd_quantum_oracle(0.99, 0.25) == doctest::Approx(0.7425).epsilon(1e-6));
  CHECK(usd_quantum_oracle(0.7, 1.0) == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("susd_nc_oracle") {
  CHECK(susd_nc_oracle(0.5, 0.04, 2) == doctest::Approx(0.32).epsilon(1e-6));
  CHECK(susd_nc_oracle(0.7, 0.3, 1) == doctest::Approx(usd_nc_oracle(0.7, 0.3)));
  CHECK(susd_nc_oracle(0.6, 0.0, 3) == doctest::Approx(0.6).epsilon(1e-6));
  CHECK(susd_nc_oracle(0.5, 0.1, 3) ==
        doctest::Approx(bounds::nc_susd_max(0.5, 0.1, 3)).epsilon(1e-6));
  CHECK_THROWS_AS(susd_nc_oracle(0.5, 0.1, 7), DepthExceeded);
}

TEST_CASE("clone2_nc_oracle") {
  CHECK(clone2_nc_oracle(0.5, 0.25, 1, 2) == doctest::Approx(0.4));
  CHECK(clone2_nc_oracle(0.8, 0.0, 2, 3) == doctest::Approx(0.8));
  CHECK(clone2_nc_oracle(0.7, 0.4, 2, 2) == doctest::Approx(0.7));
}

TEST_CASE("confidence_oracle") {
  const maxconf::QubitEnsemble worked(0.42 * M_PI, 0.58, 0.65);
  CHECK(confidence_oracle(worked, 1) == doctest::Approx(0.870719).epsilon(1e-4));
  CHECK(confidence_oracle(worked, 2) == doctest::Approx(0.661335).epsilon(1e-4));

  const maxconf::QubitEnsemble pure(M_PI / 3.0, 1.0, 0.5);
  CHECK(confidence_oracle(pure, 1) == doctest::Approx(1.0).epsilon(1e-4));

  const maxconf::QubitEnsemble flat(0.0, 0.58, 0.65);
  CHECK(confidence_oracle(flat, 1) == doctest::Approx(0.65).epsilon(1e-6));

  CHECK_THROWS_AS(confidence_oracle(maxconf::QubitEnsemble(0.0, 1.0, 0.5), 1),
                  SingularAverage);

  SUBCASE("serial reference agrees bit-for-bit") {
    const double a = confidence_oracle(worked, 1);
    const double b = confidence_oracle_serial(worked, 1);
    CHECK(a == b);
  }
}

TEST_CASE("duan_guo_feasibility") {
  CHECK(duan_guo_feasibility(0.5, 1, 2, 0.0, 0.0));
  const double s = 0.5;
  const double a = (1.0 - s) / (1.0 - s * s);
  CHECK(duan_guo_feasibility(s, 1, 2, a, a));
  // The equal-priors optimum sits on the boundary.
  const double lhs = (1.0 - a) * (1.0 - a);
  const double rhs = std::pow(s - a * s * s, 2);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  CHECK_FALSE(duan_guo_feasibility(0.5, 1, 2, 1.0, 1.0));
  CHECK_THROWS_AS(duan_guo_feasibility(1.5, 1, 2, 0.0, 0.0), InvalidArgument);
}
