#include "cqnd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <vector>

namespace cqnd::oracle {

double usd_nc_oracle(double q1, double c) {
  const double q2 = 1.0 - q1;
  const double v[3] = {0.0, q1 * (1.0 - c), q2 * (1.0 - c)};
  return std::max({v[0], v[1], v[2]});
}

double usd_quantum_oracle(double q1, double c) {
  const double q2 = 1.0 - q1;
  if (c <= 0.0) return 1.0;
  if (c >= 1.0) return 0.0;
  // The objective increases in both success rates, so the optimum sits on
  // the feasibility boundary (1 - a1)(1 - a2) = c. Scan its parametrization
  // a2 = 1 - c / (1 - a1) densely in a1.
  auto f = [&](double a1) { return q1 * a1 + q2 * (1.0 - c / (1.0 - a1)); };
  return maximize_1d(f, 0.0, 1.0 - c).max;
}

namespace {

// Per-branch recursion of the sequential task: g_1(x) = 1 - x and
// g_r(x) = max_{a in [0, 1-x]} a * g_{r-1}(x / (1 - a)). Inner levels are
// tabulated on a dense grid and linearly interpolated so each stage remains a
// single 1-D maximization.
class SusdValueFunction {
 public:
  SusdValueFunction(double c, int levels, const Tolerances& tol) : c_(c) {
    // Level 1 is exact; each further level is built from the previous one.
    for (int r = 2; r < levels; ++r) tabulate_next(r, tol);
    level_ = levels;
  }

  double top(const Tolerances& tol) const {
    return stage_max(c_, level_, tol);
  }

 private:
  static constexpr int kTabPoints = 2001;

  double eval(double x, int r) const {
    if (x >= 1.0) return 0.0;
    if (r == 1) return 1.0 - x;
    const auto& tab = tables_.at(r);
    const double t = (x - c_) / (1.0 - c_) * (kTabPoints - 1);
    const int i = std::clamp(static_cast<int>(t), 0, kTabPoints - 2);
    const double frac = t - i;
    return tab[i] + frac * (tab[i + 1] - tab[i]);
  }

  double stage_max(double x, int r, const Tolerances& tol) const {
    const double hi = 1.0 - x;
    if (hi <= 0.0) return 0.0;
    auto f = [&](double a) {
      return a >= 1.0 ? 0.0 : a * eval(x / (1.0 - a), r - 1);
    };
    return maximize_1d(f, 0.0, hi, tol).max;
  }

  void tabulate_next(int r, const Tolerances& tol) {
    std::vector<double> tab(kTabPoints);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < kTabPoints; ++i) {
      const double x = c_ + (1.0 - c_) * static_cast<double>(i) / (kTabPoints - 1);
      tab[i] = stage_max(x, r, tol);
    }
    tables_[r] = std::move(tab);
  }

  double c_;
  int level_ = 1;
  std::map<int, std::vector<double>> tables_;
};

}  // namespace

double susd_nc_oracle(double q1, double c, int N, const Tolerances& tol) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (N > 6) throw DepthExceeded("susd_nc_oracle supports N <= 6");
  if (c >= 1.0) return 0.0;
  if (N == 1) return usd_nc_oracle(q1, c);
  const SusdValueFunction vf(c, N, tol);
  return std::max(q1, 1.0 - q1) * vf.top(tol);
}

double clone2_nc_oracle(double q1, double c, int n, int m) {
  if (n < 1 || m < n) throw InvalidArgument("copy counts require m >= n >= 1");
  const double q2 = 1.0 - q1;
  double cap;  // alpha_1 + alpha_2 <= cap
  if (n == m) {
    cap = 1.0;
  } else if (c >= 1.0) {
    cap = static_cast<double>(n) / m;
  } else {
    cap = (1.0 - std::pow(c, n)) / (1.0 - std::pow(c, m));
  }
  cap = std::min(cap, 1.0);
  return std::max({0.0, q1 * cap, q2 * cap});
}

namespace {

constexpr int kPolarPoints = 721;
constexpr int kAzimuthPoints = 1441;

// Tr(A |v><v|) for Hermitian A and the Bloch-angle direction v, with the
// density matrices hoisted out of the scan loop.
double expectation(const Mat2& a, double cos_half, const complexd& sin_half) {
  const double c2 = cos_half * cos_half;
  const double s2 = std::norm(sin_half);
  const complexd cross = cos_half * std::conj(sin_half);
  return a(0, 0).real() * c2 + a(1, 1).real() * s2 + 2.0 * (a(0, 1) * cross).real();
}

double confidence_oracle_impl(const maxconf::QubitEnsemble& ens, int k,
                              const Tolerances& tol, bool parallel) {
  tol.validate();
  if (k != 1 && k != 2) throw InvalidArgument("outcome index must be 1 or 2");
  const Mat2 rho_avg = ens.rho_avg();
  const Mat2 qrho_k = ens.q(k) * ens.rho(k);
  const Eig2 avg = eig2_hermitian(rho_avg, tol);
  if (avg.lo <= tol.tol_eq) {
    throw SingularAverage("average state is singular; confidence undefined");
  }

  double polar_lo = 0.0, polar_hi = M_PI;
  double az_lo = 0.0, az_hi = 2.0 * M_PI;
  double best = -std::numeric_limits<double>::infinity();
  double best_polar = 0.0, best_az = 0.0;

  for (int round = 0; round < 2; ++round) {
    const double dp = (polar_hi - polar_lo) / (kPolarPoints - 1);
    const double da = (az_hi - az_lo) / (kAzimuthPoints - 1);
    double round_best = -std::numeric_limits<double>::infinity();
    long round_idx = -1;

    auto eval = [&](long idx) {
      const int ip = static_cast<int>(idx / kAzimuthPoints);
      const int ia = static_cast<int>(idx % kAzimuthPoints);
      const double polar = polar_lo + ip * dp;
      const double az = az_lo + ia * da;
      const double ch = std::cos(polar / 2.0);
      const complexd sh =
          complexd(std::cos(az), std::sin(az)) * std::sin(polar / 2.0);
      const double den = expectation(rho_avg, ch, sh);
      if (den <= 1e-15) return -std::numeric_limits<double>::infinity();
      return expectation(qrho_k, ch, sh) / den;
    };
    const long total = static_cast<long>(kPolarPoints) * kAzimuthPoints;

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
      {
        double tbest = -std::numeric_limits<double>::infinity();
        long tidx = -1;
#pragma omp for nowait
        for (long idx = 0; idx < total; ++idx) {
          const double v = eval(idx);
          if (v > tbest || (v == tbest && idx < tidx)) {
            tbest = v;
            tidx = idx;
          }
        }
#pragma omp critical
        {
          if (tbest > round_best || (tbest == round_best && tidx < round_idx)) {
            round_best = tbest;
            round_idx = tidx;
          }
        }
      }
#else
      parallel = false;
#endif
    }
    if (!parallel) {
      for (long idx = 0; idx < total; ++idx) {
        const double v = eval(idx);
        if (v > round_best) {
          round_best = v;
          round_idx = idx;
        }
      }
    }

    if (round_best > best) {
      best = round_best;
      best_polar = polar_lo + (round_idx / kAzimuthPoints) * dp;
      best_az = az_lo + (round_idx % kAzimuthPoints) * da;
    }
    // One refinement round around the incumbent.
    polar_lo = std::max(0.0, best_polar - 2.0 * dp);
    polar_hi = std::min(M_PI, best_polar + 2.0 * dp);
    az_lo = best_az - 2.0 * da;
    az_hi = best_az + 2.0 * da;
  }
  return best;
}

}  // namespace

double confidence_oracle(const maxconf::QubitEnsemble& ens, int k,
                         const Tolerances& tol) {
  return confidence_oracle_impl(ens, k, tol, true);
}

double confidence_oracle_serial(const maxconf::QubitEnsemble& ens, int k,
                                const Tolerances& tol) {
  return confidence_oracle_impl(ens, k, tol, false);
}

bool duan_guo_feasibility(double s, int n, int m, double alpha1, double alpha2,
                          const Tolerances& tol) {
  if (s < 0.0 || s > 1.0) throw InvalidArgument("overlap s must lie in [0,1]");
  if (alpha1 < 0.0 || alpha1 > 1.0 || alpha2 < 0.0 || alpha2 > 1.0) {
    throw InvalidArgument("alphas must lie in [0,1]");
  }
  const double lhs = (1.0 - alpha1) * (1.0 - alpha2);
  const double rhs =
      std::pow(std::pow(s, n) - std::sqrt(alpha1 * alpha2) * std::pow(s, m), 2);
  return lhs >= rhs - tol.tol_eq;
}

}  // namespace cqnd::oracle
