#include "cqnd/optics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cqnd::optics {

double PathPolState::norm2() const {
  double n = 0.0;
  for (const auto& [key, amp] : amp_) n += std::norm(amp);
  return n;
}

double PathPolState::path_prob(Path path) const {
  return std::norm(get(path, Pol::H)) + std::norm(get(path, Pol::V));
}

InputFamily InputFamily::pure(double s) {
  if (s < 0.0 || s > 1.0) throw InvalidArgument("overlap s must lie in [0,1]");
  InputFamily f;
  f.kind = Kind::PureOverlap;
  f.s = s;
  return f;
}

InputFamily InputFamily::noisy(double theta, double p) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("p must lie in [0,1]");
  InputFamily f;
  f.kind = Kind::NoisyTheta;
  f.theta = theta;
  f.p = p;
  return f;
}

std::array<double, 2> InputFamily::state(int j) const {
  if (j != 1 && j != 2) throw InvalidArgument("state index must be 1 or 2");
  const double sign = (j == 1) ? 1.0 : -1.0;
  if (kind == Kind::PureOverlap) {
    return {std::sqrt((1.0 + s) / 2.0), sign * std::sqrt((1.0 - s) / 2.0)};
  }
  return {std::cos(theta / 2.0), -sign * std::sin(theta / 2.0)};
}

std::array<double, 2> InputFamily::state_perp(int j) const {
  const auto st = state(j);
  return {-st[1], st[0]};
}

std::array<double, 2> InputFamily::effective_state(int j) const {
  if (kind == Kind::PureOverlap) return state(j);
  const double sign = (j == 1) ? 1.0 : -1.0;
  const double pc = p * std::cos(theta);
  return {std::sqrt((1.0 + pc) / 2.0), -sign * std::sqrt((1.0 - pc) / 2.0)};
}

Mat2 hwp_jones(double angle) {
  const double c = std::cos(2.0 * angle);
  const double s = std::sin(2.0 * angle);
  return Mat2(c, s, s, -c);
}

namespace {

struct HV {
  double h = 0.0;
  double v = 0.0;
};

HV rotate(const std::array<double, 2>& state, double phi) {
  const auto r = hwp_jones(phi).apply({state[0], state[1]});
  return {r[0].real(), r[1].real()};
}

}  // namespace

PathPolState closed_form_transform(const InputFamily& family, int j, double phi,
                                   double mu, double nu) {
  const HV hv = rotate(family.state(j), phi);
  const double c_mu = std::cos(2.0 * mu), s_mu = std::sin(2.0 * mu);
  const double c_nu = std::cos(2.0 * nu), s_nu = std::sin(2.0 * nu);
  PathPolState out;
  out.at(Path::Succ, Pol::H) = hv.h * c_mu;
  out.at(Path::Succ, Pol::V) = -hv.v * c_nu;
  out.at(Path::Fail, Pol::H) = hv.v * s_nu;
  out.at(Path::Fail, Pol::V) = hv.h * s_mu;
  return out;
}

PathPolState chain_transform(const OpticalConfig& config,
                             const std::array<complexd, 2>& input) {
  // Entry wave plate.
  const auto rot = hwp_jones(config.phi).apply(input);
  // PBS split: H component into one arm, V into the other.
  const complexd arm_h_in = rot[0];
  const complexd arm_v_in = rot[1];
  // Per-arm wave plates.
  const auto arm_h = hwp_jones(config.mu).apply({arm_h_in, 0.0});
  const auto arm_v = hwp_jones(config.nu).apply({0.0, arm_v_in});
  // PBS recombination: transmitted components form the success branch, the
  // reflected ones the failure branch (routed to path p0).
  const complexd succ_h = arm_h[0];
  const complexd succ_v = arm_v[1];
  const complexd fail_h = arm_v[0];
  const complexd fail_v = arm_h[1];
  // Success branch: PBS split into p1 (H) and p2 (V), each followed by its
  // exit wave plate.
  const auto p1 = hwp_jones(config.xi1).apply({succ_h, 0.0});
  const auto p2 = hwp_jones(config.xi2).apply({0.0, succ_v});

  PathPolState out;
  out.at(Path::P0, Pol::H) = fail_h;
  out.at(Path::P0, Pol::V) = fail_v;
  out.at(Path::P1, Pol::H) = p1[0];
  out.at(Path::P1, Pol::V) = p1[1];
  out.at(Path::P2, Pol::H) = p2[0];
  out.at(Path::P2, Pol::V) = p2[1];
  return out;
}

std::pair<double, double> success_probs(const InputFamily& family, double phi, double mu,
                                        double nu) {
  const double c2mu = std::pow(std::cos(2.0 * mu), 2);
  const double c2nu = std::pow(std::cos(2.0 * nu), 2);
  const HV a = rotate(family.effective_state(1), phi);
  const HV b = rotate(family.effective_state(2), phi);
  return {a.h * a.h * c2mu + a.v * a.v * c2nu, b.h * b.h * c2mu + b.v * b.v * c2nu};
}

double orthogonality_residual(const InputFamily& family, double phi, double mu,
                              double nu) {
  const double c2mu = std::pow(std::cos(2.0 * mu), 2);
  const double c2nu = std::pow(std::cos(2.0 * nu), 2);
  const HV a = rotate(family.effective_state(1), phi);
  const HV b = rotate(family.effective_state(2), phi);
  return a.h * b.h * c2mu + a.v * b.v * c2nu;
}

namespace {

struct Candidate {
  double c2mu = 0.0;  // cos^2(2 mu)
  double c2nu = 0.0;  // cos^2(2 nu)
  bool ok = false;
};

// Solve h1 h2 x + v1 v2 y = 0 on [0,1]^2 with one coordinate saturated; the
// parallel-failure-post constraint forces sin(2mu) = 0 or sin(2nu) = 0.
std::array<Candidate, 2> constraint_candidates(double hh, double vv) {
  std::array<Candidate, 2> cands;
  constexpr double kEps = 1e-15;
  if (std::abs(vv) > kEps) {
    const double y = -hh / vv;
    if (y >= -1e-12 && y <= 1.0 + 1e-12) {
      cands[0] = {1.0, std::clamp(y, 0.0, 1.0), true};
    }
  } else if (std::abs(hh) <= kEps) {
    cands[0] = {1.0, 1.0, true};
  }
  if (std::abs(hh) > kEps) {
    const double x = -vv / hh;
    if (x >= -1e-12 && x <= 1.0 + 1e-12) {
      cands[1] = {std::clamp(x, 0.0, 1.0), 1.0, true};
    }
  } else if (std::abs(vv) <= kEps) {
    cands[1] = {1.0, 1.0, true};
  }
  return cands;
}

double angle_from_cos2(double c2) {
  // cos^2(2a) = c2, choosing sin(2a) >= 0.
  return 0.5 * std::acos(std::clamp(std::sqrt(std::max(c2, 0.0)), -1.0, 1.0));
}

OpticalConfig make_config(const InputFamily& family, double phi, const Candidate& cand) {
  OpticalConfig cfg;
  cfg.phi = phi;
  cfg.mu = angle_from_cos2(cand.c2mu);
  cfg.nu = angle_from_cos2(cand.c2nu);
  const HV a = rotate(family.effective_state(1), phi);
  const HV b = rotate(family.effective_state(2), phi);
  const double s_mu = std::sin(2.0 * cfg.mu);
  const double s_nu = std::sin(2.0 * cfg.nu);
  cfg.xi1 = 0.5 * std::atan2(a.h * s_mu, a.v * s_nu);
  cfg.xi2 = 0.5 * std::atan2(b.h * s_nu, b.v * s_mu);
  return cfg;
}

}  // namespace

UsdSolution solve_usd_config(double q1, double s, const Tolerances& tol) {
  tol.validate();
  if (s <= 0.0 || s >= 1.0) throw InvalidArgument("solve_usd_config requires s in (0,1)");
  if (q1 < 0.0 || q1 > 1.0) throw InvalidArgument("q1 must lie in [0,1]");
  const InputFamily family = InputFamily::pure(s);
  const double q2 = 1.0 - q1;

  auto objective = [&](double phi) {
    const HV a = rotate(family.state(1), phi);
    const HV b = rotate(family.state(2), phi);
    double best = -1.0;
    for (const Candidate& cand : constraint_candidates(a.h * b.h, a.v * b.v)) {
      if (!cand.ok) continue;
      const double a1 = a.h * a.h * cand.c2mu + a.v * a.v * cand.c2nu;
      const double a2 = b.h * b.h * cand.c2mu + b.v * b.v * cand.c2nu;
      best = std::max(best, q1 * a1 + q2 * a2);
    }
    return best;
  };

  const Max1dResult opt = maximize_1d(objective, -M_PI / 4.0, M_PI / 4.0, tol);
  if (opt.max < 0.0) throw NoFeasibleConfig("no angle configuration met the constraints");

  // Recover the winning candidate at the optimal phi.
  const HV a = rotate(family.state(1), opt.argmax);
  const HV b = rotate(family.state(2), opt.argmax);
  UsdSolution sol;
  double best = -1.0;
  for (const Candidate& cand : constraint_candidates(a.h * b.h, a.v * b.v)) {
    if (!cand.ok) continue;
    const double a1 = a.h * a.h * cand.c2mu + a.v * a.v * cand.c2nu;
    const double a2 = b.h * b.h * cand.c2mu + b.v * b.v * cand.c2nu;
    const double val = q1 * a1 + q2 * a2;
    if (val > best) {
      best = val;
      sol.config = make_config(family, opt.argmax, cand);
      sol.alpha1 = a1;
      sol.alpha2 = a2;
    }
  }
  sol.achieved = best;
  sol.residual = orthogonality_residual(family, sol.config.phi, sol.config.mu,
                                        sol.config.nu);
  return sol;
}

double mc_outcome_prob(double theta, double p, double phi, double mu, double nu, int j,
                       int k, const Tolerances& tol) {
  tol.validate();
  if ((j != 1 && j != 2) || (k != 1 && k != 2)) {
    throw InvalidArgument("state/outcome indices must be 1 or 2");
  }
  const InputFamily family = InputFamily::noisy(theta, p);
  const double c2mu = std::pow(std::cos(2.0 * mu), 2);
  const double c2nu = std::pow(std::cos(2.0 * nu), 2);
  const HV hj = rotate(family.state(j), phi);
  const HV hbj = rotate(family.state_perp(j), phi);
  const HV hck = rotate(family.effective_state(k), phi);
  const double denom = 2.0 * (hck.h * hck.h * c2mu + hck.v * hck.v * c2nu);
  if (denom <= tol.tol_eq) {
    throw DegenerateBasis("measurement basis normalizer vanishes");
  }
  const double f = std::pow(hj.h * hck.h * c2mu + hj.v * hck.v * c2nu, 2);
  const double fbar = std::pow(hbj.h * hck.h * c2mu + hbj.v * hck.v * c2nu, 2);
  return ((1.0 + p) * f + (1.0 - p) * fbar) / denom;
}

McSolution solve_mc_config(double q1, double theta, double p, const Tolerances& tol) {
  tol.validate();
  if (p <= 0.0 || p > 1.0) throw InvalidArgument("solve_mc_config requires p in (0,1]");
  if (theta <= 0.0 || theta > M_PI / 2.0 + 1e-12) {
    throw InvalidArgument("solve_mc_config requires theta in (0, pi/2]");
  }
  const InputFamily family = InputFamily::noisy(theta, p);
  const double q2 = 1.0 - q1;

  auto confidences_at = [&](double phi, const Candidate& cand, double& c1, double& c2) {
    const double mu = angle_from_cos2(cand.c2mu);
    const double nu = angle_from_cos2(cand.c2nu);
    for (int k = 1; k <= 2; ++k) {
      const double pk1 = mc_outcome_prob(theta, p, phi, mu, nu, 1, k, tol);
      const double pk2 = mc_outcome_prob(theta, p, phi, mu, nu, 2, k, tol);
      const double total = q1 * pk1 + q2 * pk2;
      const double ck = total <= tol.tol_eq
                            ? 0.0
                            : (k == 1 ? q1 * pk1 : q2 * pk2) / total;
      (k == 1 ? c1 : c2) = ck;
    }
  };

  auto objective = [&](double phi) {
    const HV a = rotate(family.effective_state(1), phi);
    const HV b = rotate(family.effective_state(2), phi);
    double best = -1.0;
    for (const Candidate& cand : constraint_candidates(a.h * b.h, a.v * b.v)) {
      if (!cand.ok) continue;
      double c1 = 0.0, c2 = 0.0;
      try {
        confidences_at(phi, cand, c1, c2);
      } catch (const DegenerateBasis&) {
        continue;
      }
      best = std::max(best, q1 * c1 + q2 * c2);
    }
    return best;
  };

  const Max1dResult opt = maximize_1d(objective, -M_PI / 4.0, M_PI / 4.0, tol);
  if (opt.max < 0.0) throw NoFeasibleConfig("no angle configuration met the constraints");

  const HV a = rotate(family.effective_state(1), opt.argmax);
  const HV b = rotate(family.effective_state(2), opt.argmax);
  McSolution sol;
  double best = -1.0;
  for (const Candidate& cand : constraint_candidates(a.h * b.h, a.v * b.v)) {
    if (!cand.ok) continue;
    double c1 = 0.0, c2 = 0.0;
    try {
      confidences_at(opt.argmax, cand, c1, c2);
    } catch (const DegenerateBasis&) {
      continue;
    }
    const double val = q1 * c1 + q2 * c2;
    if (val > best) {
      best = val;
      sol.config = make_config(family, opt.argmax, cand);
      sol.c1 = c1;
      sol.c2 = c2;
    }
  }
  sol.residual = orthogonality_residual(family, sol.config.phi, sol.config.mu,
                                        sol.config.nu);
  return sol;
}

}  // namespace cqnd::optics
