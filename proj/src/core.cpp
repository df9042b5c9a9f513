#include "cqnd/core.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cqnd {

Eig2 eig2_hermitian(const Mat2& m, const Tolerances& tol) {
  tol.validate();
  if (!m.is_hermitian(tol.tol_herm)) {
    throw NotHermitian("matrix is not Hermitian within tol_herm");
  }
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const complexd b = m(0, 1);
  const double half_tr = 0.5 * (a + d);
  const double rad = std::hypot(0.5 * (a - d), std::abs(b));

  Eig2 out;
  out.lo = half_tr - rad;
  out.hi = half_tr + rad;

  if (rad <= tol.tol_herm) {
    // Degenerate: any orthonormal pair works.
    out.vec_lo = {1.0, 0.0};
    out.vec_hi = {0.0, 1.0};
    return out;
  }
  if (std::abs(b) <= tol.tol_herm) {
    // Diagonal: basis vectors, ordered by eigenvalue.
    if (a <= d) {
      out.vec_lo = {1.0, 0.0};
      out.vec_hi = {0.0, 1.0};
    } else {
      out.vec_lo = {0.0, 1.0};
      out.vec_hi = {1.0, 0.0};
    }
    return out;
  }
  // (b, hi - a) spans the top eigenspace; hi - a is real.
  const double y = out.hi - a;
  const double n = std::sqrt(std::norm(b) + y * y);
  out.vec_hi = {b / n, y / n};
  out.vec_lo = {-y / n, std::conj(b) / n};
  return out;
}

Mat2 inv_sqrt2(const Mat2& m, const Tolerances& tol) {
  const Eig2 eig = eig2_hermitian(m, tol);
  if (eig.lo <= tol.tol_eq) {
    throw Singular("inv_sqrt2 requires eigenvalues > tol_eq");
  }
  const Mat2 p_lo = Mat2::projector(eig.vec_lo);
  const Mat2 p_hi = Mat2::projector(eig.vec_hi);
  return (1.0 / std::sqrt(eig.lo)) * p_lo + (1.0 / std::sqrt(eig.hi)) * p_hi;
}

namespace {

// Golden-section on a bracket known to contain a local maximum.
Max1dResult golden_refine(const std::function<double(double)>& f, double a, double b,
                          double fa_seed_x, double fa_seed) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a) + std::abs(b));
       ++it) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    }
  }
  Max1dResult r{fa_seed_x, fa_seed};
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (f1 > r.max) r = {x1, f1};
  if (f2 > r.max) r = {x2, f2};
  if (fm > r.max) r = {xm, fm};
  return r;
}

}  // namespace

Max1dResult maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                        const Tolerances& tol) {
  tol.validate();
  if (!(lo < hi)) throw InvalidInterval("maximize_1d requires lo < hi");

  constexpr int kIntervals = 10000;
  const double step = (hi - lo) / kIntervals;
  double best_x = lo;
  double best_f = f(lo);
  for (int i = 1; i <= kIntervals; ++i) {
    const double x = (i == kIntervals) ? hi : lo + i * step;
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  const double a = std::max(lo, best_x - step);
  const double b = std::min(hi, best_x + step);
  return golden_refine(f, a, b, best_x, best_f);
}

namespace {

GridMaxResult grid_refine_impl(const std::function<double(const std::vector<double>&)>& f,
                               const std::vector<Interval>& box, int coarse,
                               int refine_rounds, bool parallel) {
  const int d = static_cast<int>(box.size());
  if (d > 4) throw DimensionTooLarge("grid_refine_max supports at most 4 dimensions");
  if (d < 1) throw InvalidArgument("grid_refine_max requires at least 1 dimension");
  if (coarse < 11) throw InvalidArgument("grid_refine_max requires coarse >= 11");

  std::vector<Interval> cur = box;
  GridMaxResult best;
  best.max = -std::numeric_limits<double>::infinity();
  best.argmax.assign(d, 0.0);

  std::int64_t total = 1;
  for (int i = 0; i < d; ++i) total *= coarse;

  std::vector<double> lo(d), step(d);
  for (int round = 0; round <= refine_rounds; ++round) {
    for (int i = 0; i < d; ++i) {
      lo[i] = cur[i].lo;
      step[i] = (cur[i].hi - cur[i].lo) / (coarse - 1);
    }

    double round_val = -std::numeric_limits<double>::infinity();
    std::int64_t round_idx = -1;
    std::int64_t round_d2 = std::numeric_limits<std::int64_t>::max();

    auto eval = [&](std::int64_t idx) {
      thread_local std::vector<double> x;
      x.resize(d);
      std::int64_t rem = idx;
      for (int i = d - 1; i >= 0; --i) {
        x[i] = lo[i] + static_cast<double>(rem % coarse) * step[i];
        rem /= coarse;
      }
      return f(x);
    };
    // Squared index distance from the box center, the tie-break key. On flat
    // plateaus (e.g. a linear objective along a constraint face) this keeps
    // the incumbent centered so the next shrunken box still straddles the
    // plateau instead of clinging to one edge of it.
    auto center_dist2 = [&](std::int64_t idx) {
      const std::int64_t mid2 = coarse - 1;  // 2 * center index
      std::int64_t d2 = 0;
      std::int64_t rem = idx;
      for (int i = 0; i < d; ++i) {
        const std::int64_t off = 2 * (rem % coarse) - mid2;
        d2 += off * off;
        rem /= coarse;
      }
      return d2;
    };
    // Values within a few ulps count as tied: plateau values computed at
    // different grid nodes differ by rounding noise, which must not override
    // the centering tie-break.
    auto better = [&](double v, std::int64_t idx, double best_v, std::int64_t best_idx,
                      std::int64_t best_d2, std::int64_t& d2_out) {
      if (v == -std::numeric_limits<double>::infinity()) return false;
      const double tie = 32.0 * std::numeric_limits<double>::epsilon() *
                         std::max({1.0, std::abs(v), std::abs(best_v)});
      if (v < best_v - tie) return false;
      d2_out = center_dist2(idx);
      if (v > best_v + tie) return true;
      return d2_out < best_d2 || (d2_out == best_d2 && idx < best_idx);
    };

    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
      {
        double tval = -std::numeric_limits<double>::infinity();
        std::int64_t tidx = -1;
        std::int64_t td2 = std::numeric_limits<std::int64_t>::max();
#pragma omp for nowait
        for (std::int64_t idx = 0; idx < total; ++idx) {
          const double v = eval(idx);
          std::int64_t d2 = 0;
          if (better(v, idx, tval, tidx, td2, d2)) {
            tval = std::max(tval, v);
            tidx = idx;
            td2 = d2;
          }
        }
#pragma omp critical
        {
          std::int64_t d2 = 0;
          if (tidx >= 0 && better(tval, tidx, round_val, round_idx, round_d2, d2)) {
            round_val = std::max(round_val, tval);
            round_idx = tidx;
            round_d2 = d2;
          }
        }
      }
#else
      parallel = false;
#endif
    }
    if (!parallel) {
      for (std::int64_t idx = 0; idx < total; ++idx) {
        const double v = eval(idx);
        std::int64_t d2 = 0;
        if (better(v, idx, round_val, round_idx, round_d2, d2)) {
          round_val = std::max(round_val, v);
          round_idx = idx;
          round_d2 = d2;
        }
      }
    }

    if (round_idx >= 0 && round_val > best.max) {
      best.max = round_val;
      std::int64_t rem = round_idx;
      for (int i = d - 1; i >= 0; --i) {
        best.argmax[i] = lo[i] + static_cast<double>(rem % coarse) * step[i];
        rem /= coarse;
      }
    }

    if (round == refine_rounds) break;
    // Shrink tenfold around the incumbent, clipped to the original box.
    for (int i = 0; i < d; ++i) {
      const double w = (cur[i].hi - cur[i].lo) / 10.0;
      double nlo = best.argmax[i] - 0.5 * w;
      double nhi = best.argmax[i] + 0.5 * w;
      nlo = std::max(nlo, box[i].lo);
      nhi = std::min(nhi, box[i].hi);
      if (!(nlo < nhi)) {
        nlo = box[i].lo;
        nhi = box[i].hi;
      }
      cur[i] = {nlo, nhi};
    }
  }
  return best;
}

}  // namespace

GridMaxResult grid_refine_max(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<Interval>& box, int coarse,
                              int refine_rounds) {
  return grid_refine_impl(f, box, coarse, refine_rounds, true);
}

GridMaxResult grid_refine_max_serial(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<Interval>& box, int coarse, int refine_rounds) {
  return grid_refine_impl(f, box, coarse, refine_rounds, false);
}

}  // namespace cqnd
