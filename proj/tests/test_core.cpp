#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cqnd/core.hpp"

using namespace cqnd;

TEST_CASE("eig2_hermitian closed form") {
  SUBCASE("identity") {
    const Eig2 e = eig2_hermitian(Mat2::identity());
    CHECK(e.lo == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.hi == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("diagonal") {
    const Eig2 e = eig2_hermitian(Mat2::diag(0.2, 0.8));
    CHECK(e.lo == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(e.hi == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(std::abs(e.vec_lo[0]) == doctest::Approx(1.0));
    CHECK(std::abs(e.vec_hi[1]) == doctest::Approx(1.0));
  }
  SUBCASE("depolarized plus state") {
    // 0.58 |+><+| + 0.42 I/2 has eigenvalues (1 +- 0.58)/2 = (0.21, 0.79).
    const Mat2 plus = Mat2::projector({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    const Mat2 rho = 0.58 * plus + 0.21 * Mat2::identity();
    const Eig2 e = eig2_hermitian(rho);
    CHECK(e.lo == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(e.hi == doctest::Approx(0.79).epsilon(1e-12));
  }
  SUBCASE("eigen equations and orthonormality") {
    const Mat2 m(0.4, complexd(0.1, 0.2), complexd(0.1, -0.2), 0.6);
    const Eig2 e = eig2_hermitian(m);
    for (const auto& [lambda, v] : {std::pair{e.lo, e.vec_lo}, {e.hi, e.vec_hi}}) {
      const auto mv = m.apply(v);
      CHECK(std::abs(mv[0] - lambda * v[0]) < 1e-9);
      CHECK(std::abs(mv[1] - lambda * v[1]) < 1e-9);
    }
    const complexd dot =
        std::conj(e.vec_lo[0]) * e.vec_hi[0] + std::conj(e.vec_lo[1]) * e.vec_hi[1];
    CHECK(std::abs(dot) < 1e-9);
  }
  SUBCASE("trace and determinant invariants") {
    const Mat2 m(0.3, complexd(0.05, -0.1), complexd(0.05, 0.1), 0.7);
    const Eig2 e = eig2_hermitian(m);
    CHECK(e.lo + e.hi == doctest::Approx(m.trace().real()).epsilon(1e-9));
    CHECK(e.lo * e.hi == doctest::Approx(m.det().real()).epsilon(1e-9));
  }
  SUBCASE("rejects non-Hermitian input") {
    CHECK_THROWS_AS(eig2_hermitian(Mat2(0.0, 1.0, 0.0, 0.0)), NotHermitian);
  }
}

TEST_CASE("inv_sqrt2") {
  SUBCASE("identity") {
    CHECK(inv_sqrt2(Mat2::identity()).max_abs_diff(Mat2::identity()) < 1e-12);
  }
  SUBCASE("diagonal") {
    const Mat2 r = inv_sqrt2(Mat2::diag(4.0, 9.0));
    CHECK(r.max_abs_diff(Mat2::diag(0.5, 1.0 / 3.0)) < 1e-12);
  }
  SUBCASE("round trip on a dense state") {
    const Mat2 plus = Mat2::projector({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
    const Mat2 rho = 0.58 * plus + 0.21 * Mat2::identity();
    const Mat2 r = inv_sqrt2(rho);
    CHECK((r * rho * r).max_abs_diff(Mat2::identity()) < 1e-8);
  }
  SUBCASE("singular input throws") {
    CHECK_THROWS_AS(inv_sqrt2(Mat2::diag(1.0, 0.0)), Singular);
  }
}

TEST_CASE("maximize_1d") {
  SUBCASE("failure-branch objective") {
    const double c = 0.25;
    auto f = [&](double a) { return a * (1.0 - c / (1.0 - a)); };
    const Max1dResult r = maximize_1d(f, 0.0, 1.0 - c);
    CHECK(r.max == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.argmax == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("parabola") {
    const Max1dResult r = maximize_1d([](double x) { return -x * x; }, -1.0, 1.0);
    CHECK(std::abs(r.max) < 1e-12);
    CHECK(std::abs(r.argmax) < 1e-6);
  }
  SUBCASE("degenerate c = 1") {
    auto f = [](double a) { return a < 1.0 ? a * (1.0 - 1.0 / (1.0 - a)) : 0.0; };
    const Max1dResult r = maximize_1d(f, 0.0, 0.5);
    CHECK(r.max == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("stable under grid doubling") {
    auto f = [](double x) { return std::sin(5.0 * x) + 0.3 * std::sin(17.0 * x); };
    const double a = maximize_1d(f, 0.0, 3.0).max;
    // Re-running on each half and combining cannot beat the full result by
    // more than tol_opt.
    const double b =
        std::max(maximize_1d(f, 0.0, 1.5).max, maximize_1d(f, 1.5, 3.0).max);
    CHECK(std::abs(a - b) < 1e-6);
  }
  SUBCASE("invalid interval") {
    CHECK_THROWS_AS(maximize_1d([](double x) { return x; }, 1.0, 0.0), InvalidInterval);
  }
}

TEST_CASE("grid_refine_max") {
  SUBCASE("paraboloid") {
    auto f = [](const std::vector<double>& x) { return -(x[0] * x[0] + x[1] * x[1]); };
    const GridMaxResult r = grid_refine_max(f, {{-1.0, 1.0}, {-1.0, 1.0}}, 41, 3);
    CHECK(std::abs(r.max) < 1e-6);
    CHECK(std::abs(r.argmax[0]) < 1e-3);
    CHECK(std::abs(r.argmax[1]) < 1e-3);
  }
  SUBCASE("linear objective over the quantum region") {
    const double c = 0.25;
    auto f = [&](const std::vector<double>& x) {
      if ((1.0 - x[0]) * (1.0 - x[1]) < c) return -1.0;
      return 0.5 * x[0] + 0.5 * x[1];
    };
    const GridMaxResult r = grid_refine_max(f, {{0.0, 1.0}, {0.0, 1.0}}, 101, 3);
    CHECK(r.max == doctest::Approx(0.5).epsilon(1e-5));
  }
  SUBCASE("linear objective over a triangle") {
    auto f = [](const std::vector<double>& x) {
      if (x[0] + x[1] > 0.75) return -1.0;
      return 0.5 * x[0] + 0.5 * x[1];
    };
    const GridMaxResult r = grid_refine_max(f, {{0.0, 1.0}, {0.0, 1.0}}, 101, 3);
    CHECK(r.max == doctest::Approx(0.375).epsilon(1e-5));
  }
  SUBCASE("serial reference agrees bit-for-bit") {
    auto f = [](const std::vector<double>& x) {
      return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]) + 0.1 * x[0];
    };
    const std::vector<Interval> box{{0.0, 2.0}, {-1.0, 1.0}};
    const GridMaxResult a = grid_refine_max(f, box, 41, 2);
    const GridMaxResult b = grid_refine_max_serial(f, box, 41, 2);
    CHECK(a.max == b.max);
    CHECK(a.argmax == b.argmax);
  }
  SUBCASE("dimension limit") {
    auto f = [](const std::vector<double>&) { return 0.0; };
    CHECK_THROWS_AS(
        grid_refine_max(f, std::vector<Interval>(5, Interval{0.0, 1.0}), 11, 1),
        DimensionTooLarge);
  }
}
