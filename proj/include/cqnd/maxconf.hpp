#pragma once

#include <array>

#include "cqnd/core.hpp"

namespace cqnd::maxconf {

/// Two-state qubit ensemble: |psi_j> = cos(theta/2)|H> -+ sin(theta/2)|V>
/// depolarized with parameter p and prepared with priors (q1, 1-q1).
struct QubitEnsemble {
  double theta = 0.0;
  double p = 1.0;
  double q1 = 0.5;

  QubitEnsemble(double theta_, double p_, double q1_);

  double q(int k) const { return k == 1 ? q1 : 1.0 - q1; }
  std::array<complexd, 2> pure_state(int j) const;
  Mat2 rho(int j) const;      // depolarized state j in {1,2}
  Mat2 rho_avg() const;       // q1 rho_1 + q2 rho_2
};

struct ConfidenceResult {
  int k = 1;
  double confidence = 0.0;
  double dual_value = 0.0;            // l_k; equals confidence by strong duality
  Mat2 optimal_projector;             // rank-1 measurement direction
  double certificate_min_eig = 0.0;   // smallest eigenvalue of l_k rho - q_k rho_k
  double slackness_residual = 0.0;    // Tr[(l_k rho - q_k rho_k) Pi_opt]
};

/// p |psi_j><psi_j| + (1-p) I/2.
Mat2 depolarize(double theta, double p, int j);

/// Maximal confidence for outcome k via the dual eigenproblem
/// l_k = lambda_max( q_k rho^{-1/2} rho_k rho^{-1/2} ).
ConfidenceResult max_confidence(const QubitEnsemble& ens, int k,
                                const Tolerances& tol = {});

struct ComplementaryStates {
  std::array<double, 2> state1;  // components in the H/V basis
  std::array<double, 2> state2;
  double overlap = 0.0;          // <psi1_c | psi2_c> = p cos(theta)
};

/// Pure states whose unambiguous discrimination realizes maximal-confidence
/// discrimination of the noisy ensemble.
ComplementaryStates complementary_states(double theta, double p);

/// Complementary slackness of the dual certificate at the returned projector.
bool verify_slackness(const QubitEnsemble& ens, int k, const ConfidenceResult& result,
                      double tol_slack = 1e-8);

}  // namespace cqnd::maxconf
