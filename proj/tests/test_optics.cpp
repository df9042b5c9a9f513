#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cqnd/bounds.hpp"
#include "cqnd/maxconf.hpp"
#include "cqnd/optics.hpp"

using namespace cqnd;
using namespace cqnd::optics;

TEST_CASE("hwp_jones") {
  CHECK(hwp_jones(0.0).max_abs_diff(Mat2::diag(1.0, -1.0)) < 1e-12);
  CHECK(hwp_jones(M_PI / 4.0).max_abs_diff(Mat2(0.0, 1.0, 1.0, 0.0)) < 1e-12);

  // Unitary, Hermitian, det -1.
  const Mat2 w = hwp_jones(0.3);
  CHECK((w * w.adjoint()).max_abs_diff(Mat2::identity()) < 1e-12);
  CHECK(w.is_hermitian());
  CHECK(w.det().real() == doctest::Approx(-1.0));

  // Rotating the overlap-s inputs reproduces the printed (h_j, v_j).
  const double s = 0.37, phi = 0.21;
  const InputFamily fam = InputFamily::pure(s);
  for (int j : {1, 2}) {
    const auto st = fam.state(j);
    const auto r = hwp_jones(phi).apply({st[0], st[1]});
    const double sign = (j == 1) ? 1.0 : -1.0;
    const double h = std::sqrt((1.0 + s) / 2.0) * std::cos(2.0 * phi) +
                     sign * std::sqrt((1.0 - s) / 2.0) * std::sin(2.0 * phi);
    const double v = std::sqrt((1.0 + s) / 2.0) * std::sin(2.0 * phi) -
                     sign * std::sqrt((1.0 - s) / 2.0) * std::cos(2.0 * phi);
    CHECK(r[0].real() == doctest::Approx(h).epsilon(1e-12));
    CHECK(r[1].real() == doctest::Approx(v).epsilon(1e-12));
  }
}

TEST_CASE("closed_form_transform") {
  const InputFamily fam = InputFamily::pure(0.5);
  SUBCASE("identity angles") {
    for (int j : {1, 2}) {
      const PathPolState out = closed_form_transform(fam, j, 0.0, 0.0, 0.0);
      // At phi = 0 the rotated components are (h, v) = (psi_0, -psi_1), so the
      // success branch (h, -v) is the input itself.
      const auto st = fam.state(j);
      CHECK(std::abs(out.get(Path::Succ, Pol::H) - st[0]) < 1e-12);
      CHECK(std::abs(out.get(Path::Succ, Pol::V) - st[1]) < 1e-12);
      CHECK(out.path_prob(Path::Fail) < 1e-12);
    }
  }
  SUBCASE("identical inputs give j-independent output") {
    const InputFamily same = InputFamily::pure(1.0);
    const PathPolState a = closed_form_transform(same, 1, 0.2, 0.3, 0.4);
    const PathPolState b = closed_form_transform(same, 2, 0.2, 0.3, 0.4);
    for (Path path : {Path::Succ, Path::Fail}) {
      for (Pol pol : {Pol::H, Pol::V}) {
        CHECK(std::abs(a.get(path, pol) - b.get(path, pol)) < 1e-12);
      }
    }
  }
  SUBCASE("unitarity on random angles") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int t = 0; t < 100; ++t) {
      const PathPolState out =
          closed_form_transform(fam, 1 + (t % 2), ang(rng), ang(rng), ang(rng));
      CHECK(out.norm2() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("chain_transform agrees with the closed form") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> ang(-M_PI, M_PI);
  const InputFamily fam = InputFamily::pure(0.62);
  double max_dev = 0.0;
  for (int t = 0; t < 100; ++t) {
    OpticalConfig cfg;
    cfg.phi = ang(rng);
    cfg.mu = ang(rng);
    cfg.nu = ang(rng);
    cfg.xi1 = ang(rng);
    cfg.xi2 = ang(rng);
    const int j = 1 + (t % 2);
    const auto st = fam.state(j);
    const PathPolState chain = chain_transform(cfg, {st[0], st[1]});
    const PathPolState closed = closed_form_transform(fam, j, cfg.phi, cfg.mu, cfg.nu);

    CHECK(chain.norm2() == doctest::Approx(1.0).epsilon(1e-12));
    // Failure amplitudes are untouched by the exit plates.
    max_dev = std::max(max_dev, std::abs(chain.get(Path::P0, Pol::H) -
                                         closed.get(Path::Fail, Pol::H)));
    max_dev = std::max(max_dev, std::abs(chain.get(Path::P0, Pol::V) -
                                         closed.get(Path::Fail, Pol::V)));
    // The exit plates only redistribute polarization inside each success path.
    const double succ_chain = chain.path_prob(Path::P1) + chain.path_prob(Path::P2);
    max_dev = std::max(max_dev, std::abs(succ_chain - closed.path_prob(Path::Succ)));
  }
  CHECK(max_dev < 1e-12);
}

TEST_CASE("success_probs and orthogonality_residual") {
  const InputFamily fam = InputFamily::pure(0.5);
  SUBCASE("quarter-angle plates suppress success") {
    const auto [a1, a2] = success_probs(fam, 0.0, M_PI / 4.0, M_PI / 4.0);
    CHECK(a1 == doctest::Approx(0.0));
    CHECK(a2 == doctest::Approx(0.0));
  }
  SUBCASE("zero plates pass everything") {
    const auto [a1, a2] = success_probs(fam, 0.3, 0.0, 0.0);
    CHECK(a1 == doctest::Approx(1.0));
    CHECK(a2 == doctest::Approx(1.0));
  }
  SUBCASE("balanced plates halve both") {
    const auto [a1, a2] = success_probs(fam, 0.0, M_PI / 8.0, M_PI / 8.0);
    CHECK(a1 == doctest::Approx(0.5));
    CHECK(a2 == doctest::Approx(0.5));
  }
  SUBCASE("residual cases") {
    CHECK(orthogonality_residual(InputFamily::pure(0.0), 0.0, 0.2, 0.2) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // mu = nu with overlapping inputs: residual is s cos^2(2mu).
    CHECK(orthogonality_residual(fam, 0.0, 0.2, 0.2) ==
          doctest::Approx(0.5 * std::pow(std::cos(0.4), 2)).epsilon(1e-12));
  }
}

TEST_CASE("solve_usd_config") {
  SUBCASE("symmetric IDP point") {
    const UsdSolution sol = solve_usd_config(0.5, 0.5);
    CHECK(sol.achieved == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(std::abs(sol.residual) < 1e-9);
  }
  SUBCASE("boundary branch") {
    const UsdSolution sol = solve_usd_config(0.9, 0.5);
    CHECK(sol.achieved ==
          doctest::Approx(cqnd::bounds::q_usd_max(0.9, 0.25)).epsilon(1e-6));
  }
  SUBCASE("near-identical inputs succeed rarely") {
    const UsdSolution sol = solve_usd_config(0.5, 0.999);
    CHECK(sol.achieved < 2e-3);
  }
  SUBCASE("re-simulation reproduces the alphas") {
    const UsdSolution sol = solve_usd_config(0.65, 0.4);
    const auto [a1, a2] =
        success_probs(InputFamily::pure(0.4), sol.config.phi, sol.config.mu,
                      sol.config.nu);
    CHECK(a1 == doctest::Approx(sol.alpha1).epsilon(1e-12));
    CHECK(a2 == doctest::Approx(sol.alpha2).epsilon(1e-12));
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS(solve_usd_config(0.5, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_usd_config(0.5, 1.0), InvalidArgument);
  }
}

TEST_CASE("mc_outcome_prob") {
  SUBCASE("pure limit reduces to USD conditionals") {
    const UsdSolution sol = solve_usd_config(0.5, std::cos(0.3));
    // s = cos(theta) pure states coincide with the theta-state carriers.
    const double cross =
        mc_outcome_prob(0.3, 1.0, sol.config.phi, sol.config.mu, sol.config.nu, 1, 2);
    CHECK(cross == doctest::Approx(0.0).epsilon(1e-9));
  }
  SUBCASE("conditional-on-success rows sum to one") {
    // The outcome projectors only form an orthonormal success-space basis at
    // configurations satisfying the orthogonality constraint, so evaluate at
    // a solved one.
    const double theta = 0.42 * M_PI, p = 0.58;
    const McSolution sol = solve_mc_config(0.65, theta, p);
    const OpticalConfig& c = sol.config;
    const InputFamily fam = InputFamily::noisy(theta, p);
    const double c2mu = std::pow(std::cos(2.0 * c.mu), 2);
    const double c2nu = std::pow(std::cos(2.0 * c.nu), 2);
    for (int j : {1, 2}) {
      double total = 0.0;
      for (int k : {1, 2}) {
        total += mc_outcome_prob(theta, p, c.phi, c.mu, c.nu, j, k);
      }
      // Success probability of rho_j into the (mu, nu) interferometer.
      const auto st = fam.state(j);
      const auto sp = fam.state_perp(j);
      const auto hj = hwp_jones(c.phi).apply({st[0], st[1]});
      const auto hb = hwp_jones(c.phi).apply({sp[0], sp[1]});
      const double sj = std::norm(hj[0]) * c2mu + std::norm(hj[1]) * c2nu;
      const double sb = std::norm(hb[0]) * c2mu + std::norm(hb[1]) * c2nu;
      const double succ = ((1.0 + p) * sj + (1.0 - p) * sb) / 2.0;
      CHECK(total == doctest::Approx(succ).epsilon(1e-9));
    }
  }
  SUBCASE("degenerate basis throws") {
    CHECK_THROWS_AS(
        mc_outcome_prob(0.3, 0.5, 0.0, M_PI / 4.0, M_PI / 4.0, 1, 1),
        DegenerateBasis);
  }
}

TEST_CASE("solve_mc_config") {
  SUBCASE("worked point") {
    const McSolution sol = solve_mc_config(0.65, 0.42 * M_PI, 0.58);
    CHECK(sol.c1 == doctest::Approx(0.870719).epsilon(1e-4));
    CHECK(sol.c2 == doctest::Approx(0.661335).epsilon(1e-4));
  }
  SUBCASE("pure limit is unambiguous") {
    const McSolution sol = solve_mc_config(0.5, 0.3, 1.0);
    CHECK(sol.c1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sol.c2 == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("orthogonal Bloch directions") {
    const double p = 0.58;
    const McSolution sol = solve_mc_config(0.5, M_PI / 2.0, p);
    CHECK(sol.c1 == doctest::Approx((1.0 + p) / 2.0).epsilon(1e-6));
    CHECK(sol.c2 == doctest::Approx((1.0 + p) / 2.0).epsilon(1e-6));
  }
  SUBCASE("matches the dual values across parameters") {
    for (double q1 : {0.35, 0.5, 0.65}) {
      for (double p : {0.3, 0.7}) {
        const double theta = 0.35 * M_PI;
        const McSolution sol = solve_mc_config(q1, theta, p);
        const cqnd::maxconf::QubitEnsemble ens(theta, p, q1);
        CHECK(sol.c1 ==
              doctest::Approx(cqnd::maxconf::max_confidence(ens, 1).confidence)
                  .epsilon(1e-4));
        CHECK(sol.c2 ==
              doctest::Approx(cqnd::maxconf::max_confidence(ens, 2).confidence)
                  .epsilon(1e-4));
      }
    }
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS(solve_mc_config(0.5, 0.3, 0.0), InvalidArgument);
    CHECK_THROWS_AS(solve_mc_config(0.5, -0.1, 0.5), InvalidArgument);
  }
}
