#include "cqnd/maxconf.hpp"

#include <cmath>

namespace cqnd::maxconf {

QubitEnsemble::QubitEnsemble(double theta_, double p_, double q1_)
    : theta(theta_), p(p_), q1(q1_) {
  require_finite(theta, "theta");
  if (p < 0.0 || p > 1.0) throw InvalidArgument("p must lie in [0,1]");
  if (q1 < 0.0 || q1 > 1.0) throw InvalidArgument("q1 must lie in [0,1]");
}

std::array<complexd, 2> QubitEnsemble::pure_state(int j) const {
  if (j != 1 && j != 2) throw InvalidArgument("state index must be 1 or 2");
  const double sign = (j == 1) ? 1.0 : -1.0;
  return {std::cos(theta / 2.0), -sign * std::sin(theta / 2.0)};
}

Mat2 QubitEnsemble::rho(int j) const { return depolarize(theta, p, j); }

Mat2 QubitEnsemble::rho_avg() const { return q1 * rho(1) + (1.0 - q1) * rho(2); }

Mat2 depolarize(double theta, double p, int j) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("p must lie in [0,1]");
  QubitEnsemble ens(theta, p, 0.5);
  const Mat2 proj = Mat2::projector(ens.pure_state(j));
  return p * proj + (0.5 * (1.0 - p)) * Mat2::identity();
}

ConfidenceResult max_confidence(const QubitEnsemble& ens, int k, const Tolerances& tol) {
  tol.validate();
  if (k != 1 && k != 2) throw InvalidArgument("outcome index must be 1 or 2");
  const Mat2 rho = ens.rho_avg();
  const Eig2 avg_eig = eig2_hermitian(rho, tol);
  if (avg_eig.lo <= tol.tol_eq) {
    throw SingularAverage("average state is singular; confidence undefined");
  }
  const Mat2 r = inv_sqrt2(rho, tol);
  const Mat2 rho_k = ens.rho(k);
  const double qk = ens.q(k);
  const Mat2 dressed = qk * (r * rho_k * r);
  const Eig2 eig = eig2_hermitian(dressed, tol);

  ConfidenceResult res;
  res.k = k;
  res.dual_value = eig.hi;
  res.confidence = eig.hi;

  // Undo the rho^{1/2} dressing: with w = rho^{-1/2} v the Rayleigh quotient
  // q_k <w|rho_k|w> / <w|rho|w> equals the top dressed eigenvalue.
  auto w = r.apply(eig.vec_hi);
  const double nrm = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
  if (nrm <= tol.tol_eq) throw SingularAverage("degenerate optimal direction");
  w[0] /= nrm;
  w[1] /= nrm;
  res.optimal_projector = Mat2::projector(w);

  const Mat2 cert = res.dual_value * rho - qk * rho_k;
  res.certificate_min_eig = eig2_hermitian(cert, tol).lo;
  res.slackness_residual = (cert * res.optimal_projector).trace().real();
  return res;
}

ComplementaryStates complementary_states(double theta, double p) {
  const double pc = p * std::cos(theta);
  const double hp = std::sqrt((1.0 + pc) / 2.0);
  const double vm = std::sqrt((1.0 - pc) / 2.0);
  ComplementaryStates cs;
  cs.state1 = {hp, -vm};
  cs.state2 = {hp, vm};
  cs.overlap = pc;
  return cs;
}

bool verify_slackness(const QubitEnsemble& ens, int k, const ConfidenceResult& result,
                      double tol_slack) {
  const Mat2 cert = result.dual_value * ens.rho_avg() - ens.q(k) * ens.rho(k);
  const double residual = (cert * result.optimal_projector).trace().real();
  return std::abs(residual) <= tol_slack;
}

}  // namespace cqnd::maxconf
