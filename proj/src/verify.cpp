#include "cqnd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cqnd/bounds.hpp"
#include "cqnd/maxconf.hpp"
#include "cqnd/ontic.hpp"
#include "cqnd/optics.hpp"
#include "cqnd/oracle.hpp"

namespace cqnd::verify {

namespace {

constexpr int kGrid = 21;

double grid_value(int i, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(i) / (kGrid - 1);
}

CheckResult make_result(std::string name, double max_dev, double tolerance,
                        std::string note = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_deviation = max_dev;
  r.tolerance = tolerance;
  r.pass = max_dev <= tolerance;
  r.note = std::move(note);
  return r;
}

}  // namespace

std::vector<CheckResult> bound_oracle_agreement(const Tolerances& tol) {
  std::vector<CheckResult> out;

  double dev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double q1 = grid_value(i, 0.0, 1.0);
      const double c = grid_value(j, 0.0, 1.0);
      dev = std::max(dev, std::abs(bounds::nc_usd_max(q1, c) -
                                   oracle::usd_nc_oracle(q1, c)));
    }
  }
  out.push_back(make_result("nc_usd_max vs vertex oracle", dev, tol.tol_opt));

  dev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double q1 = grid_value(i, 0.01, 0.99);
      const double c = grid_value(j, 0.0, 1.0);
      dev = std::max(dev, std::abs(bounds::q_usd_max(q1, c) -
                                   oracle::usd_quantum_oracle(q1, c)));
    }
  }
  out.push_back(make_result("q_usd_max vs grid oracle", dev, tol.tol_opt));

  dev = 0.0;
  for (int N : {2, 3}) {
    for (int j = 0; j < kGrid; ++j) {
      const double c = grid_value(j, 0.0, 0.98);
      const double g = oracle::susd_nc_oracle(1.0, c, N, tol);  // prior factor 1
      for (int i = 0; i < kGrid; ++i) {
        const double q1 = grid_value(i, 0.0, 1.0);
        const double q = std::max(q1, 1.0 - q1);
        dev = std::max(dev, std::abs(bounds::nc_susd_max(q1, c, N) - q * g));
      }
    }
  }
  out.push_back(make_result("nc_susd_max vs nested oracle", dev, tol.tol_opt));

  dev = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const double q1 = grid_value(i, 0.0, 1.0);
      const double c = grid_value(j, 0.0, 1.0);
      dev = std::max(dev, std::abs(bounds::nc_clone1_max(q1, c) -
                                   oracle::usd_nc_oracle(q1, c)));
    }
  }
  out.push_back(make_result("nc_clone1_max vs vertex oracle", dev, tol.tol_opt));

  dev = 0.0;
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    for (int i = 0; i < kGrid; ++i) {
      for (int j = 0; j < kGrid; ++j) {
        const double q1 = grid_value(i, 0.0, 1.0);
        const double c = grid_value(j, 0.0, 1.0);
        dev = std::max(dev, std::abs(bounds::nc_clone2_max(q1, c, n, m) -
                                     oracle::clone2_nc_oracle(q1, c, n, m)));
      }
    }
  }
  out.push_back(make_result("nc_clone2_max vs simplex oracle", dev, tol.tol_opt));

  // Equal-prior quantum cloning bound vs a scan over the boundary of the
  // positive-semidefiniteness region of the cloning isometry. The average
  // success rate increases in both alphas, so the optimum sits where the Gram
  // condition (1-a1)(1-a2) = (s^n - sqrt(a1 a2) s^m)^2 is tight; with
  // t = sqrt(a2) that condition is the quadratic A t^2 - B t + C = 0 below,
  // and the largest feasible a2 for a given a1 is the upper root squared.
  dev = 0.0;
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}, {2, 3}}) {
    for (int j = 1; j < kGrid - 1; ++j) {
      const double c = grid_value(j, 0.0, 1.0);
      const double s = std::sqrt(c);
      const double sn = std::pow(s, n);
      const double sm = std::pow(s, m);
      auto objective = [&, sn, sm](double a1) {
        const double A = (1.0 - a1) + a1 * sm * sm;
        const double B = 2.0 * sn * sm * std::sqrt(a1);
        const double C = sn * sn - (1.0 - a1);
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return -std::numeric_limits<double>::infinity();
        const double t_lo = (B - std::sqrt(disc)) / (2.0 * A);
        const double t_hi = (B + std::sqrt(disc)) / (2.0 * A);
        // Valid amplitudes need t in [0, 1] as well.
        if (t_lo > 1.0 || t_hi < 0.0) {
          return -std::numeric_limits<double>::infinity();
        }
        const double t = std::min(t_hi, 1.0);
        return 0.5 * a1 + 0.5 * t * t;
      };
      const auto res = maximize_1d(objective, 0.0, 1.0, tol);
      dev = std::max(dev, std::abs(bounds::q_clone2_max_equal(c, n, m) - res.max));
    }
  }
  out.push_back(make_result("q_clone2_max_equal vs feasibility-grid oracle", dev,
                            tol.tol_opt));
  return out;
}

CheckResult sequential_stage_check(const Tolerances& tol) {
  double dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double c = 0.01 + 0.97 * static_cast<double>(i) / 49.0;
    auto f = [&](double a) { return a * (1.0 - c / (1.0 - a)); };
    const auto res = maximize_1d(f, 0.0, 1.0 - c, tol);
    const double expected = std::pow(1.0 - std::sqrt(c), 2);
    dev = std::max(dev, std::abs(res.max - expected));
  }
  return make_result("stage objective max equals (1-sqrt(c))^2", dev, 1e-9);
}

std::vector<CheckResult> optics_usd_bridge(const Tolerances& tol) {
  std::vector<CheckResult> out;

  double dev = 0.0;
  for (double q1 : {0.5, 0.7, 0.9}) {
    for (double s : {0.2, 0.5, 0.8}) {
      const auto sol = optics::solve_usd_config(q1, s, tol);
      dev = std::max(dev, std::abs(sol.achieved - bounds::q_usd_max(q1, s * s)));
    }
  }
  out.push_back(make_result("solve_usd_config attains q_usd_max", dev, 1e-6));

  std::mt19937 rng(20240917);
  std::uniform_real_distribution<double> ang(-M_PI / 2.0, M_PI / 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  dev = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const optics::OpticalConfig cfg{ang(rng), ang(rng), ang(rng), ang(rng), ang(rng)};
    const double s = unit(rng);
    const int j = 1 + (trial % 2);
    const auto family = optics::InputFamily::pure(s);
    const auto st = family.state(j);
    const auto closed = optics::closed_form_transform(family, j, cfg.phi, cfg.mu, cfg.nu);
    const auto chain = optics::chain_transform(cfg, {st[0], st[1]});
    // Failure branch agrees amplitude-by-amplitude; the exit wave plates are
    // unitary, so the per-path success probabilities agree as well.
    dev = std::max(dev, std::abs(chain.get(optics::Path::P0, optics::Pol::H) -
                                 closed.get(optics::Path::Fail, optics::Pol::H)));
    dev = std::max(dev, std::abs(chain.get(optics::Path::P0, optics::Pol::V) -
                                 closed.get(optics::Path::Fail, optics::Pol::V)));
    dev = std::max(dev,
                   std::abs(chain.path_prob(optics::Path::P1) -
                            std::norm(closed.get(optics::Path::Succ, optics::Pol::H))));
    dev = std::max(dev,
                   std::abs(chain.path_prob(optics::Path::P2) -
                            std::norm(closed.get(optics::Path::Succ, optics::Pol::V))));
    dev = std::max(dev, std::abs(chain.norm2() - 1.0));
  }
  out.push_back(make_result("chain vs closed-form interferometer", dev, 1e-12));
  return out;
}

namespace {

struct OnticInstance {
  ontic::EpistemicState mu1;
  ontic::EpistemicState mu2;
  ontic::EpistemicState post1;
  ontic::EpistemicState post2;
  double alpha = 0.0;
  double c = 0.0;
};

// Inputs share a common component of mass c and carry disjoint exclusive
// remainders; posts decompose the same way with the rescaled confusability
// c' = c / (1 - alpha), so the construction satisfies the preservation
// identity by design.
OnticInstance random_instance(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  const double c = unit(rng);
  const double alpha = unit(rng) * (1.0 - c);

  auto random_dist = [&](int len) {
    std::vector<double> w(len);
    double sum = 0.0;
    for (double& v : w) {
      v = 0.05 + unit(rng);
      sum += v;
    }
    for (double& v : w) v /= sum;
    return w;
  };

  const int kc = 2, k1 = 2, k2 = 2;
  const ontic::OnticSpace space(kc + k1 + k2);
  auto assemble = [&](const std::vector<double>& common, double common_mass,
                      const std::vector<double>& excl, double excl_mass, int block) {
    std::vector<double> w(space.size, 0.0);
    for (int i = 0; i < kc; ++i) w[i] = common_mass * common[i];
    const int off = kc + block * k1;
    for (int i = 0; i < static_cast<int>(excl.size()); ++i) {
      w[off + i] = excl_mass * excl[i];
    }
    return ontic::EpistemicState(space, std::move(w));
  };

  const auto common_in = random_dist(kc);
  const auto common_post = random_dist(kc);
  const double cp = c / (1.0 - alpha);
  OnticInstance inst{
      assemble(common_in, c, random_dist(k1), 1.0 - c, 0),
      assemble(common_in, c, random_dist(k2), 1.0 - c, 1),
      assemble(common_post, cp, random_dist(k1), 1.0 - cp, 0),
      assemble(common_post, cp, random_dist(k2), 1.0 - cp, 1),
      alpha,
      c};
  return inst;
}

ontic::EpistemicState random_state(std::mt19937& rng, ontic::OnticSpace space) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> w(space.size);
  double sum = 0.0;
  for (double& v : w) {
    v = unit(rng);
    sum += v;
  }
  for (double& v : w) v /= sum;
  return ontic::EpistemicState(space, std::move(w));
}

}  // namespace

std::vector<CheckResult> ontic_identities(const Tolerances& tol) {
  std::vector<CheckResult> out;
  std::mt19937 rng(77);

  // Bundled 4-point toy model.
  const ontic::OnticSpace s4(4);
  const ontic::EpistemicState toy_mu1(s4, {0.5, 0.5, 0.0, 0.0});
  const ontic::EpistemicState toy_mu2(s4, {0.5, 0.0, 0.5, 0.0});
  const ontic::OnticSpace s3(3);
  const double toy_alpha = 0.4;
  const double toy_cp = 0.5 / (1.0 - toy_alpha);
  const ontic::EpistemicState toy_post1(s3, {toy_cp, 1.0 - toy_cp, 0.0});
  const ontic::EpistemicState toy_post2(s3, {toy_cp, 0.0, 1.0 - toy_cp});

  double dev_rel = 0.0;   // preservation identity c = c' (1 - alpha)
  double dev_resp = 0.0;  // response extraction vs outcome probabilities
  double dev_norm = 0.0;  // outcome normalization
  double dev_succ = 0.0;  // outcome j on mu_j equals alpha

  auto exercise = [&](const ontic::EpistemicState& mu1, const ontic::EpistemicState& mu2,
                      const ontic::EpistemicState& post1,
                      const ontic::EpistemicState& post2, double alpha) {
    const auto qnd = ontic::build_usd_qnd(mu1, mu2, alpha, alpha, post1, post2, tol);
    const auto rep = ontic::check_confusability_preserved(qnd.map, mu1, mu2, tol);
    dev_rel = std::max(dev_rel, std::abs(rep.before - rep.after));
    const double cp = ontic::confusability(post1, post2, tol).value;
    dev_rel = std::max(dev_rel, std::abs(rep.before - cp * (1.0 - alpha)));

    dev_succ = std::max(dev_succ,
                        std::abs(ontic::outcome_probability(qnd, mu1, 1, tol) - alpha));
    dev_succ = std::max(dev_succ,
                        std::abs(ontic::outcome_probability(qnd, mu2, 2, tol) - alpha));
    dev_succ = std::max(dev_succ, ontic::outcome_probability(qnd, mu1, 2, tol));
    dev_succ = std::max(dev_succ, ontic::outcome_probability(qnd, mu2, 1, tol));

    const auto resp = ontic::extract_response_functions(qnd, tol);
    for (int t = 0; t < 4; ++t) {
      const auto state = random_state(rng, mu1.space());
      double total = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        const double p = ontic::outcome_probability(qnd, state, k, tol);
        total += p;
        double via_resp = 0.0;
        for (std::size_t i = 0; i < state.size(); ++i) {
          via_resp += resp.function(k)[i] * state[i];
        }
        dev_resp = std::max(dev_resp, std::abs(p - via_resp));
      }
      dev_norm = std::max(dev_norm, std::abs(total - 1.0));
    }
  };

  exercise(toy_mu1, toy_mu2, toy_post1, toy_post2, toy_alpha);
  for (int t = 0; t < 50; ++t) {
    const auto inst = random_instance(rng);
    exercise(inst.mu1, inst.mu2, inst.post1, inst.post2, inst.alpha);
  }

  out.push_back(make_result("confusability preservation identity", dev_rel, 1e-9));
  out.push_back(make_result("response extraction agrees with outcomes", dev_resp, 1e-9));
  out.push_back(make_result("outcome probabilities normalize", dev_norm, 1e-9));
  out.push_back(make_result("success/cross outcome probabilities", dev_succ, 1e-9));

  // Idempotence validation must reject interior response values.
  std::uniform_real_distribution<double> interior(0.1, 0.9);
  std::uniform_int_distribution<int> pick(0, 2);
  int rejected = 0;
  const int kCorruptions = 100;
  for (int t = 0; t < kCorruptions; ++t) {
    std::vector<std::vector<double>> fns(3, std::vector<double>(3, 0.0));
    for (int i = 0; i < 3; ++i) fns[i][i] = 1.0;
    const int at = pick(rng);
    const int other = (at + 1 + pick(rng) % 2) % 3;
    const double v = interior(rng);
    fns[at][at] = 1.0 - v;
    fns[other][at] += v;
    try {
      ontic::DirectMeasurement dm(ontic::ResponseSet(s3, std::move(fns), tol), tol);
      (void)dm;
    } catch (const InvalidArgument&) {
      ++rejected;
    }
  }
  out.push_back(make_result("corrupted direct measurements rejected",
                            static_cast<double>(kCorruptions - rejected), 0.0));
  return out;
}

std::vector<CheckResult> regime_reproduction(const Tolerances& tol) {
  std::vector<CheckResult> out;
  int failures = 0;
  for (int i = 1; i <= 99; ++i) {
    const double c = i / 100.0;
    bounds::TaskParams p;
    p.q1 = 0.5;
    p.c = c;
    if (bounds::regime_classify(bounds::Task::Usd, p, tol).label !=
        bounds::RegimeLabel::Contextual) {
      ++failures;
    }
  }
  out.push_back(make_result("USD equal priors contextual on c grid",
                            static_cast<double>(failures), 0.0));

  failures = 0;
  for (auto [n, m] : {std::pair{1, 2}, {1, 3}}) {
    for (int i = 1; i <= 99; ++i) {
      bounds::TaskParams p;
      p.q1 = 0.5;
      p.c = i / 100.0;
      p.n = n;
      p.m = m;
      if (bounds::regime_classify(bounds::Task::Pqc2, p, tol).label !=
          bounds::RegimeLabel::Contextual) {
        ++failures;
      }
    }
  }
  out.push_back(make_result("PQC-II equal priors contextual on c grid",
                            static_cast<double>(failures), 0.0));

  failures = 0;
  for (int i = 1; i <= 99; ++i) {
    bounds::TaskParams p;
    p.q1 = 0.99;
    p.c = i / 100.0;
    p.n = 1;
    p.m = 2;
    const auto r = bounds::regime_classify(bounds::Task::Pqc2, p, tol);
    if (r.bounds.nc < r.bounds.quantum - tol.tol_eq) ++failures;
  }
  out.push_back(make_result("PQC-II imbalanced priors noncontextual",
                            static_cast<double>(failures), 0.0));

  failures = 0;
  double crossover = 0.0;
  bool prev_contextual = true;
  for (int i = 1; i <= 99; ++i) {
    const double c = i / 1000.0;  // fine grid over the small-c regime
    bounds::TaskParams p;
    p.q1 = 0.5;
    p.c = c;
    p.N = 2;
    const auto r = bounds::regime_classify(bounds::Task::Susd, p, tol);
    const bool contextual = r.label == bounds::RegimeLabel::Contextual;
    if (c <= 0.02 && !contextual) ++failures;
    if (c >= 0.05 && contextual) ++failures;
    if (prev_contextual && !contextual && crossover == 0.0) crossover = c;
    prev_contextual = contextual;
  }
  out.push_back(make_result("SUSD N=2 sign change location",
                            static_cast<double>(failures), 0.0,
                            "measured crossover near c = " + std::to_string(crossover)));
  return out;
}

std::vector<CheckResult> confidence_duality(int trials, const Tolerances& tol) {
  std::vector<CheckResult> out;
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> theta_dist(0.05, M_PI - 0.05);
  std::uniform_real_distribution<double> p_dist(0.05, 0.95);
  std::uniform_real_distribution<double> q_dist(0.05, 0.95);

  double dev_gap = 0.0;
  double worst_cert = 0.0;   // most negative certificate eigenvalue
  double dev_slack = 0.0;
  for (int t = 0; t < trials; ++t) {
    const maxconf::QubitEnsemble ens(theta_dist(rng), p_dist(rng), q_dist(rng));
    for (int k = 1; k <= 2; ++k) {
      const auto res = maxconf::max_confidence(ens, k, tol);
      const double primal = oracle::confidence_oracle(ens, k, tol);
      dev_gap = std::max(dev_gap, std::abs(primal - res.dual_value));
      worst_cert = std::max(worst_cert, -res.certificate_min_eig);
      dev_slack = std::max(dev_slack, std::abs(res.slackness_residual));
    }
  }
  out.push_back(make_result("primal/dual confidence gap", dev_gap, 1e-4));
  out.push_back(make_result("dual certificate positive semidefinite", worst_cert, 1e-9));
  out.push_back(make_result("complementary slackness residual", dev_slack, 1e-8));
  return out;
}

std::vector<CheckResult> worked_point(const Tolerances& tol) {
  std::vector<CheckResult> out;
  const double theta = 0.42 * M_PI;
  const double p = 0.58;
  const double q1 = 0.65;
  const double expected_c1 = 0.870719;
  const double expected_c2 = 0.661335;

  const maxconf::QubitEnsemble ens(theta, p, q1);
  const double c1 = maxconf::max_confidence(ens, 1, tol).confidence;
  const double c2 = maxconf::max_confidence(ens, 2, tol).confidence;
  out.push_back(make_result("dual confidences at the worked point",
                            std::max(std::abs(c1 - expected_c1),
                                     std::abs(c2 - expected_c2)),
                            1e-4));

  const auto sol = optics::solve_mc_config(q1, theta, p, tol);
  out.push_back(make_result("optics solver reproduces the worked point",
                            std::max(std::abs(sol.c1 - expected_c1),
                                     std::abs(sol.c2 - expected_c2)),
                            1e-4));
  return out;
}

}  // namespace cqnd::verify
