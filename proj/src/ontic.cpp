#include "cqnd/ontic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cqnd::ontic {

EpistemicState::EpistemicState(OnticSpace space, std::vector<double> weights,
                               const Tolerances& tol)
    : space_(space), weights_(std::move(weights)) {
  tol.validate();
  if (weights_.size() != space_.size) {
    throw SpaceMismatch("weight vector length does not match ontic space size");
  }
  double sum = 0.0;
  for (double& w : weights_) {
    require_finite(w, "epistemic weight");
    if (w < -tol.tol_eq) {
      throw InvalidArgument("epistemic weight below -tol_eq");
    }
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > tol.tol_eq) {
    throw InvalidArgument("epistemic weights must sum to 1 within tol_eq");
  }
}

EpistemicState EpistemicState::point_mass(OnticSpace space, std::size_t at) {
  if (at >= space.size) throw InvalidArgument("point mass outside ontic space");
  std::vector<double> w(space.size, 0.0);
  w[at] = 1.0;
  return EpistemicState(space, std::move(w));
}

EpistemicState EpistemicState::uniform(OnticSpace space) {
  return EpistemicState(space, std::vector<double>(space.size, 1.0 / space.size));
}

std::vector<std::size_t> EpistemicState::support(double tol_eq) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > tol_eq) idx.push_back(i);
  }
  return idx;
}

StochasticMap::StochasticMap(OnticSpace from, OnticSpace to, std::vector<double> kernel,
                             const Tolerances& tol)
    : from_(from), to_(to), kernel_(std::move(kernel)) {
  tol.validate();
  if (kernel_.size() != from_.size * to_.size) {
    throw SpaceMismatch("kernel dimensions do not match the ontic spaces");
  }
  for (double v : kernel_) {
    require_finite(v, "kernel entry");
    if (v < -tol.tol_eq) throw InvalidArgument("kernel entry below -tol_eq");
  }
  for (std::size_t c = 0; c < from_.size; ++c) {
    double col = 0.0;
    for (std::size_t r = 0; r < to_.size; ++r) col += kernel_[r * from_.size + c];
    if (std::abs(col - 1.0) > tol.tol_eq) {
      throw InvalidArgument("kernel column mass must be 1 within tol_eq");
    }
  }
}

StochasticMap StochasticMap::identity(OnticSpace space) {
  std::vector<double> k(space.size * space.size, 0.0);
  for (std::size_t i = 0; i < space.size; ++i) k[i * space.size + i] = 1.0;
  return StochasticMap(space, space, std::move(k));
}

ResponseSet::ResponseSet(OnticSpace space, std::vector<std::vector<double>> functions,
                         const Tolerances& tol)
    : space_(space), functions_(std::move(functions)) {
  tol.validate();
  if (functions_.empty()) throw InvalidArgument("response set needs at least one outcome");
  for (const auto& f : functions_) {
    if (f.size() != space_.size) {
      throw SpaceMismatch("response function length does not match ontic space");
    }
    for (double v : f) {
      require_finite(v, "response value");
      if (v < -tol.tol_eq || v > 1.0 + tol.tol_eq) {
        throw InvalidArgument("response value outside [0,1]");
      }
    }
  }
  for (std::size_t i = 0; i < space_.size; ++i) {
    double s = 0.0;
    for (const auto& f : functions_) s += f[i];
    if (std::abs(s - 1.0) > tol.tol_eq) {
      throw InvalidArgument("response functions must sum to 1 pointwise");
    }
  }
}

DirectMeasurement::DirectMeasurement(ResponseSet base, const Tolerances& tol)
    : base_(std::move(base)) {
  tol.validate();
  // Idempotence and disjoint supports: entries must be 0/1 with at most one
  // outcome responding at each point.
  for (std::size_t i = 0; i < base_.space().size; ++i) {
    for (std::size_t j = 0; j < base_.outcomes(); ++j) {
      const double pj = base_.function(j)[i];
      if (std::abs(pj * pj - pj) > tol.tol_eq) {
        throw InvalidArgument("direct measurement requires 0/1 response values");
      }
      for (std::size_t k = j + 1; k < base_.outcomes(); ++k) {
        if (std::abs(pj * base_.function(k)[i]) > tol.tol_eq) {
          throw InvalidArgument("direct measurement requires disjoint supports");
        }
      }
    }
  }
}

DirectMeasurement DirectMeasurement::point_outcomes(OnticSpace space,
                                                    std::size_t outcomes) {
  if (outcomes > space.size) {
    throw InvalidArgument("more outcomes than auxiliary points");
  }
  std::vector<std::vector<double>> fns(outcomes, std::vector<double>(space.size, 0.0));
  for (std::size_t k = 0; k < outcomes; ++k) fns[k][k] = 1.0;
  // Remaining points respond with outcome 0.
  for (std::size_t i = outcomes; i < space.size; ++i) fns[0][i] = 1.0;
  return DirectMeasurement(ResponseSet(space, std::move(fns)));
}

ConfusabilityReport confusability(const EpistemicState& mu, const EpistemicState& nu,
                                  const Tolerances& tol) {
  tol.validate();
  if (!(mu.space() == nu.space())) throw SpaceMismatch("confusability: different spaces");
  ConfusabilityReport rep;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] > tol.tol_eq) rep.value += nu[i];
    if (nu[i] > tol.tol_eq) rep.reverse += mu[i];
  }
  rep.asymmetry = std::abs(rep.value - rep.reverse);
  return rep;
}

EpistemicState apply_map(const StochasticMap& map, const EpistemicState& mu,
                         const Tolerances& tol) {
  if (!(map.from() == mu.space())) throw SpaceMismatch("apply_map: space mismatch");
  std::vector<double> out(map.to().size, 0.0);
  for (std::size_t r = 0; r < map.to().size; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < map.from().size; ++c) acc += map(r, c) * mu[c];
    out[r] = acc;
  }
  return EpistemicState(map.to(), std::move(out), tol);
}

EpistemicState tensor(const EpistemicState& a, const EpistemicState& b,
                      const Tolerances& tol) {
  OnticSpace prod(a.size() * b.size());
  std::vector<double> w(prod.size);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) w[i * b.size() + j] = a[i] * b[j];
  }
  return EpistemicState(prod, std::move(w), tol);
}

double outcome_probability(const QndMeasurement& qnd, const EpistemicState& mu,
                           std::size_t k, const Tolerances& tol) {
  tol.validate();
  if (k >= qnd.direct.outcomes()) throw UnknownOutcome("outcome index out of range");
  const EpistemicState out = apply_map(qnd.map, mu, tol);
  const auto& pi = qnd.direct.base().function(k);
  const std::size_t aux = qnd.auxiliary.size;
  double p = 0.0;
  for (std::size_t s = 0; s < qnd.system_out.size; ++s) {
    for (std::size_t a = 0; a < aux; ++a) p += pi[a] * out[s * aux + a];
  }
  return p;
}

std::pair<std::vector<double>, std::vector<double>> dual_vectors(
    const EpistemicState& mu1, const EpistemicState& mu2, const Tolerances& tol) {
  tol.validate();
  if (!(mu1.space() == mu2.space())) throw SpaceMismatch("dual_vectors: space mismatch");

  // <mubar_1, mu_2> = 0 with both nonnegative forces mubar_1 to live off the
  // support of mu_2. Subject to <mubar_1, mu_1> = 1 and x >= 0 the largest
  // entry is at least 1/S with S the mu_1-mass of that region, with equality
  // exactly for the uniform value 1/S on it. Same for the other vector.
  auto solve = [&](const EpistemicState& own, const EpistemicState& other) {
    std::vector<double> x(own.size(), 0.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own[i] > tol.tol_eq && other[i] <= tol.tol_eq) mass += own[i];
    }
    if (mass <= tol.tol_eq) {
      throw NoNonnegativeDual("no nonnegative dual vector exists on this space");
    }
    for (std::size_t i = 0; i < own.size(); ++i) {
      if (own[i] > tol.tol_eq && other[i] <= tol.tol_eq) x[i] = 1.0 / mass;
    }
    return x;
  };
  return {solve(mu1, mu2), solve(mu2, mu1)};
}

QndMeasurement build_usd_qnd(const EpistemicState& mu1, const EpistemicState& mu2,
                             double alpha1, double alpha2, const EpistemicState& post1,
                             const EpistemicState& post2, const Tolerances& tol) {
  tol.validate();
  if (!(mu1.space() == mu2.space())) throw SpaceMismatch("build_usd_qnd: space mismatch");
  if (!(post1.space() == post2.space())) {
    throw SpaceMismatch("build_usd_qnd: post-state space mismatch");
  }
  if (alpha1 < -tol.tol_eq || alpha1 > 1.0 + tol.tol_eq || alpha2 < -tol.tol_eq ||
      alpha2 > 1.0 + tol.tol_eq) {
    throw InvalidArgument("alphas must lie in [0,1]");
  }
  const double alphas[2] = {std::clamp(alpha1, 0.0, 1.0), std::clamp(alpha2, 0.0, 1.0)};

  const auto [mubar1, mubar2] = dual_vectors(mu1, mu2, tol);
  const std::size_t n = mu1.size();
  const std::size_t m = post1.size();

  // xi_0 = 1 - alpha_1 mubar_1 - alpha_2 mubar_2 must stay nonnegative.
  std::vector<double> xi0(n);
  for (std::size_t i = 0; i < n; ++i) {
    xi0[i] = 1.0 - alphas[0] * mubar1[i] - alphas[1] * mubar2[i];
    if (xi0[i] < -tol.tol_eq) {
      throw InfeasibleAlpha("failure response function goes negative");
    }
    xi0[i] = std::max(xi0[i], 0.0);
  }

  // Failure columns: the construction pins down only the success branches. We route the
  // residual mass of each column onto (post-state x sigma_0), splitting the
  // post-states into a component shared between both (carrying the input
  // confusability) and per-state exclusive components.
  const EpistemicState* posts[2] = {&post1, &post2};
  double c_in[2] = {0.0, 0.0};  // mass of mu_j on the common support
  for (std::size_t i = 0; i < n; ++i) {
    if (mu1[i] > tol.tol_eq && mu2[i] > tol.tol_eq) {
      c_in[0] += mu1[i];
      c_in[1] += mu2[i];
    }
  }

  std::vector<double> shared(m, 0.0);
  std::vector<std::vector<double>> excl(2, std::vector<double>(m, 0.0));
  const bool overlapping = c_in[0] > tol.tol_eq && c_in[1] > tol.tol_eq;
  if (overlapping) {
    double shared_mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      shared[i] = std::min((1.0 - alphas[0]) * post1[i] / c_in[0],
                           (1.0 - alphas[1]) * post2[i] / c_in[1]);
      shared_mass += shared[i];
    }
    if (std::abs(shared_mass - 1.0) > 1e-6) {
      throw InfeasibleAlpha(
          "post-states do not admit the shared/exclusive decomposition required "
          "by the confusability-preserving failure branch");
    }
    for (std::size_t i = 0; i < m; ++i) shared[i] /= shared_mass;
  }
  for (int j = 0; j < 2; ++j) {
    const double excl_mass = 1.0 - c_in[j] - alphas[j];
    if (excl_mass > tol.tol_eq) {
      for (std::size_t i = 0; i < m; ++i) {
        double v = ((1.0 - alphas[j]) * (*posts[j])[i] - c_in[j] * shared[i]) / excl_mass;
        if (v < -1e-6) {
          throw InfeasibleAlpha("post-state exclusive component goes negative");
        }
        excl[j][i] = std::max(v, 0.0);
      }
      double s = std::accumulate(excl[j].begin(), excl[j].end(), 0.0);
      for (double& v : excl[j]) v /= s;
    } else {
      excl[j] = overlapping ? shared : posts[j]->weights();
    }
  }

  const OnticSpace aux(3);
  const OnticSpace sys_out(m);
  const std::size_t rows = m * aux.size;
  std::vector<double> kernel(rows * n, 0.0);
  auto at = [&](std::size_t s_out, std::size_t a, std::size_t col) -> double& {
    return kernel[(s_out * aux.size + a) * n + col];
  };

  const std::vector<double>* mubars[2] = {&mubar1, &mubar2};
  for (std::size_t col = 0; col < n; ++col) {
    // Success branches L_k = alpha_k post_k x sigma_k x mubar_k.
    for (int j = 0; j < 2; ++j) {
      const double w = alphas[j] * (*mubars[j])[col];
      if (w > 0.0) {
        for (std::size_t s = 0; s < m; ++s) at(s, j + 1, col) += w * (*posts[j])[s];
      }
    }
    // Failure branch: residual column mass onto (column post x sigma_0).
    if (xi0[col] > 0.0) {
      const std::vector<double>* w;
      if (mu1[col] > tol.tol_eq && mu2[col] <= tol.tol_eq) {
        w = &excl[0];
      } else if (mu2[col] > tol.tol_eq && mu1[col] <= tol.tol_eq) {
        w = &excl[1];
      } else {
        w = overlapping ? &shared : &excl[0];
      }
      for (std::size_t s = 0; s < m; ++s) at(s, 0, col) += xi0[col] * (*w)[s];
    }
  }

  QndMeasurement qnd{
      StochasticMap(mu1.space(), OnticSpace(rows), std::move(kernel), tol),
      sys_out,
      aux,
      DirectMeasurement::point_outcomes(aux, 3),
      {post1, post2},
      {alphas[0], alphas[1]}};
  return qnd;
}

ResponseSet extract_response_functions(const QndMeasurement& qnd, const Tolerances& tol) {
  tol.validate();
  const std::size_t n = qnd.map.from().size;
  const std::size_t aux = qnd.auxiliary.size;
  const std::size_t outcomes = qnd.direct.outcomes();
  std::vector<std::vector<double>> fns(outcomes, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < outcomes; ++k) {
    const auto& pi = qnd.direct.base().function(k);
    for (std::size_t col = 0; col < n; ++col) {
      double acc = 0.0;
      for (std::size_t s = 0; s < qnd.system_out.size; ++s) {
        for (std::size_t a = 0; a < aux; ++a) acc += pi[a] * qnd.map(s * aux + a, col);
      }
      fns[k][col] = std::clamp(acc, 0.0, 1.0);
    }
  }
  return ResponseSet(qnd.map.from(), std::move(fns), tol);
}

PreservationReport check_confusability_preserved(const StochasticMap& map,
                                                 const EpistemicState& mu,
                                                 const EpistemicState& nu,
                                                 const Tolerances& tol) {
  PreservationReport rep;
  rep.before = confusability(mu, nu, tol).value;
  rep.after = confusability(apply_map(map, mu, tol), apply_map(map, nu, tol), tol).value;
  rep.preserved = std::abs(rep.before - rep.after) <= tol.tol_eq;
  return rep;
}

}  // namespace cqnd::ontic
