#pragma once

#include <array>
#include <map>
#include <string>

#include "cqnd/core.hpp"

namespace cqnd::optics {

/// Wave-plate angles of the displaced-Sagnac setup, in radians.
struct OpticalConfig {
  double phi = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double xi1 = 0.0;
  double xi2 = 0.0;
};

enum class Path { Init, Succ, Fail, P0, P1, P2 };
enum class Pol { H, V };

/// Sparse path/polarization amplitude table with unit total norm.
class PathPolState {
 public:
  complexd& at(Path path, Pol pol) { return amp_[{path, pol}]; }
  complexd get(Path path, Pol pol) const {
    auto it = amp_.find({path, pol});
    return it == amp_.end() ? complexd{0.0, 0.0} : it->second;
  }
  double norm2() const;
  double path_prob(Path path) const;

 private:
  std::map<std::pair<Path, Pol>, complexd> amp_;
};

/// Input preparation: pure states with overlap s, or depolarized theta-states.
struct InputFamily {
  enum class Kind { PureOverlap, NoisyTheta };
  Kind kind = Kind::PureOverlap;
  double s = 0.0;      // PureOverlap
  double theta = 0.0;  // NoisyTheta
  double p = 1.0;      // NoisyTheta

  static InputFamily pure(double s);
  static InputFamily noisy(double theta, double p);

  /// |psi_j> components in the H/V basis (the pure carrier for noisy mode).
  std::array<double, 2> state(int j) const;
  /// Orthogonal complement |psi_j_perp>, used by the depolarized evolution.
  std::array<double, 2> state_perp(int j) const;
  /// Effective pure states whose USD realizes the task (complementary states
  /// in noisy mode, the inputs themselves otherwise).
  std::array<double, 2> effective_state(int j) const;
};

/// Half-wave plate Jones matrix: rows (cos2a, sin2a), (sin2a, -cos2a).
Mat2 hwp_jones(double angle);

/// Printed interferometer transformation of the input state j: success and
/// failure amplitudes before the exit wave plates.
PathPolState closed_form_transform(const InputFamily& family, int j, double phi,
                                   double mu, double nu);

/// Element-by-element simulation of the full setup, including the exit wave
/// plates and final path split.
PathPolState chain_transform(const OpticalConfig& config,
                             const std::array<complexd, 2>& input);

std::pair<double, double> success_probs(const InputFamily& family, double phi, double mu,
                                        double nu);

/// Signed residual of the success-component orthogonality constraint.
double orthogonality_residual(const InputFamily& family, double phi, double mu,
                              double nu);

struct UsdSolution {
  OpticalConfig config;
  double achieved = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double residual = 0.0;
};

/// Angle optimization attaining the optimal USD success probability for pure
/// states with overlap s and priors (q1, 1-q1).
UsdSolution solve_usd_config(double q1, double s, const Tolerances& tol = {});

/// Pr[k | rho_j] of the noisy setup at the given angles.
double mc_outcome_prob(double theta, double p, double phi, double mu, double nu, int j,
                       int k, const Tolerances& tol = {});

struct McSolution {
  OpticalConfig config;
  double c1 = 0.0;
  double c2 = 0.0;
  double residual = 0.0;
};

/// Angle optimization of the maximal-confidence setup for depolarized
/// theta-states.
McSolution solve_mc_config(double q1, double theta, double p,
                           const Tolerances& tol = {});

}  // namespace cqnd::optics
