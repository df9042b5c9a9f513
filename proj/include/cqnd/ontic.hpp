#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cqnd/core.hpp"

namespace cqnd::ontic {

/// Finite discrete hidden-variable space; only its cardinality matters.
struct OnticSpace {
  std::size_t size = 0;

  explicit OnticSpace(std::size_t n) : size(n) {
    if (n < 1) throw InvalidArgument("ontic space must have at least one point");
  }
  friend bool operator==(const OnticSpace&, const OnticSpace&) = default;
};

/// Probability distribution over a finite ontic space. Small negative weights
/// (within tol_eq) are clamped to zero on construction.
class EpistemicState {
 public:
  EpistemicState(OnticSpace space, std::vector<double> weights,
                 const Tolerances& tol = {});

  static EpistemicState point_mass(OnticSpace space, std::size_t at);
  static EpistemicState uniform(OnticSpace space);

  const OnticSpace& space() const { return space_; }
  const std::vector<double>& weights() const { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }

  /// Indices with weight above the support threshold tol_eq.
  std::vector<std::size_t> support(double tol_eq = 1e-9) const;

 private:
  OnticSpace space_;
  std::vector<double> weights_;
};

/// Column-stochastic nonnegative kernel between two ontic spaces.
/// kernel is row-major, to.size rows by from.size columns.
class StochasticMap {
 public:
  StochasticMap(OnticSpace from, OnticSpace to, std::vector<double> kernel,
                const Tolerances& tol = {});

  static StochasticMap identity(OnticSpace space);

  const OnticSpace& from() const { return from_; }
  const OnticSpace& to() const { return to_; }
  double operator()(std::size_t row, std::size_t col) const {
    return kernel_[row * from_.size + col];
  }
  const std::vector<double>& kernel() const { return kernel_; }

 private:
  OnticSpace from_;
  OnticSpace to_;
  std::vector<double> kernel_;
};

/// Measurement response functions: nonnegative, pointwise summing to one.
class ResponseSet {
 public:
  ResponseSet(OnticSpace space, std::vector<std::vector<double>> functions,
              const Tolerances& tol = {});

  const OnticSpace& space() const { return space_; }
  std::size_t outcomes() const { return functions_.size(); }
  const std::vector<double>& function(std::size_t k) const { return functions_[k]; }

 private:
  OnticSpace space_;
  std::vector<std::vector<double>> functions_;
};

/// Response set whose functions are 0/1 indicators with disjoint supports
/// (pi_j * pi_k = delta_jk * pi_k pointwise).
class DirectMeasurement {
 public:
  explicit DirectMeasurement(ResponseSet base, const Tolerances& tol = {});

  /// Outcome k responds only at point k of a space of size >= outcomes.
  static DirectMeasurement point_outcomes(OnticSpace space, std::size_t outcomes);

  const ResponseSet& base() const { return base_; }
  std::size_t outcomes() const { return base_.outcomes(); }

 private:
  ResponseSet base_;
};

/// Non-demolition measurement: transformation into a product space
/// Omega_S' x Omega_A' (flattened row-major, lambda_S' slow) plus a direct
/// measurement on the auxiliary factor.
struct QndMeasurement {
  StochasticMap map;           // Omega_S -> flattened product space
  OnticSpace system_out;       // Omega_S'
  OnticSpace auxiliary;        // Omega_A'
  DirectMeasurement direct;    // on Omega_A'
  std::vector<EpistemicState> post_states;  // success post-states, index 1-based outcome - 1
  std::vector<double> alphas;  // per-state success probabilities
};

struct ConfusabilityReport {
  double value = 0.0;       // sum of nu over supp(mu): the primary return
  double reverse = 0.0;     // sum of mu over supp(nu)
  double asymmetry = 0.0;   // |value - reverse|
};

/// Overlap functional between two epistemic states on the same space.
ConfusabilityReport confusability(const EpistemicState& mu, const EpistemicState& nu,
                                  const Tolerances& tol = {});

EpistemicState apply_map(const StochasticMap& map, const EpistemicState& mu,
                         const Tolerances& tol = {});

/// Outer product, flattened row-major with the first factor as the slow index.
EpistemicState tensor(const EpistemicState& a, const EpistemicState& b,
                      const Tolerances& tol = {});

double outcome_probability(const QndMeasurement& qnd, const EpistemicState& mu,
                           std::size_t k, const Tolerances& tol = {});

/// Nonnegative dual vectors with <mubar_k, mu_l> = delta_kl, minimizing the
/// largest entry among valid solutions.
std::pair<std::vector<double>, std::vector<double>> dual_vectors(
    const EpistemicState& mu1, const EpistemicState& mu2, const Tolerances& tol = {});

/// Non-demolition measurement unambiguously discriminating mu1 and mu2 with
/// success probabilities alpha1, alpha2 and the given success post-states.
QndMeasurement build_usd_qnd(const EpistemicState& mu1, const EpistemicState& mu2,
                             double alpha1, double alpha2, const EpistemicState& post1,
                             const EpistemicState& post2, const Tolerances& tol = {});

/// Marginalizes each outcome branch of the transformation down to response
/// functions on the input space.
ResponseSet extract_response_functions(const QndMeasurement& qnd,
                                       const Tolerances& tol = {});

struct PreservationReport {
  double before = 0.0;
  double after = 0.0;
  bool preserved = false;
};

PreservationReport check_confusability_preserved(const StochasticMap& map,
                                                 const EpistemicState& mu,
                                                 const EpistemicState& nu,
                                                 const Tolerances& tol = {});

}  // namespace cqnd::ontic
