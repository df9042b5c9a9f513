#pragma once

#include <string>
#include <vector>

#include "cqnd/core.hpp"

namespace cqnd::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string note;
};

/// Analytic bounds vs brute-force oracles on the documented parameter grids.
std::vector<CheckResult> bound_oracle_agreement(const Tolerances& tol = {});

/// maximize_1d of a(1 - c/(1-a)) against the closed form (1-sqrt(c))^2.
CheckResult sequential_stage_check(const Tolerances& tol = {});

/// Optics USD solver against the optimal quantum success probability, plus the
/// chain/closed-form equivalence regression.
std::vector<CheckResult> optics_usd_bridge(const Tolerances& tol = {});

/// Toy-model and randomized ontic identities.
std::vector<CheckResult> ontic_identities(const Tolerances& tol = {});

/// Qualitative regime reproduction across tasks.
std::vector<CheckResult> regime_reproduction(const Tolerances& tol = {});

/// Primal oracle vs dual eigenvalue, certificate PSD, complementary slackness.
std::vector<CheckResult> confidence_duality(int trials = 200,
                                            const Tolerances& tol = {});

/// The worked maximal-confidence point, via the dual and via the optics solver.
std::vector<CheckResult> worked_point(const Tolerances& tol = {});

}  // namespace cqnd::verify
