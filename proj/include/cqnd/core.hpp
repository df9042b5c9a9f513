#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "cqnd/errors.hpp"

namespace cqnd {

using complexd = std::complex<double>;

/// Central tolerance bundle, threaded explicitly through every numeric check.
struct Tolerances {
  double tol_eq = 1e-9;    // equality of probabilities / inner products
  double tol_opt = 1e-6;   // optimizer accuracy
  double tol_herm = 1e-12; // Hermiticity check

  void validate() const {
    if (!(tol_eq > 0.0 && tol_opt > 0.0 && tol_herm > 0.0)) {
      throw InvalidArgument("tolerances must be strictly positive");
    }
  }
};

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidArgument(std::string("non-finite ") + what);
}

inline void require_finite(complexd z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument(std::string("non-finite ") + what);
  }
}

/// 2x2 complex matrix with value semantics. Entries are row-major.
struct Mat2 {
  std::array<complexd, 4> e{};  // [row*2 + col]

  Mat2() = default;
  Mat2(complexd a, complexd b, complexd c, complexd d) : e{a, b, c, d} {
    for (const auto& z : e) require_finite(z, "matrix entry");
  }

  static Mat2 identity() { return Mat2(1.0, 0.0, 0.0, 1.0); }
  static Mat2 zero() { return Mat2(0.0, 0.0, 0.0, 0.0); }
  static Mat2 diag(double a, double d) { return Mat2(a, 0.0, 0.0, d); }

  /// |v><v| for a 2-component vector, not necessarily normalized.
  static Mat2 projector(const std::array<complexd, 2>& v) {
    return Mat2(v[0] * std::conj(v[0]), v[0] * std::conj(v[1]),
                v[1] * std::conj(v[0]), v[1] * std::conj(v[1]));
  }

  complexd operator()(int r, int c) const { return e[r * 2 + c]; }
  complexd& operator()(int r, int c) { return e[r * 2 + c]; }

  Mat2 adjoint() const {
    return Mat2(std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3]));
  }
  complexd trace() const { return e[0] + e[3]; }
  complexd det() const { return e[0] * e[3] - e[1] * e[2]; }

  friend Mat2 operator+(const Mat2& a, const Mat2& b) {
    return Mat2(a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]);
  }
  friend Mat2 operator-(const Mat2& a, const Mat2& b) {
    return Mat2(a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]);
  }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return Mat2(a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
                a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]);
  }
  friend Mat2 operator*(double s, const Mat2& a) {
    return Mat2(s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]);
  }

  std::array<complexd, 2> apply(const std::array<complexd, 2>& v) const {
    return {e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]};
  }

  bool is_hermitian(double tol_herm = 1e-12) const {
    return std::abs(e[0].imag()) <= tol_herm && std::abs(e[3].imag()) <= tol_herm &&
           std::abs(e[1] - std::conj(e[2])) <= tol_herm;
  }

  double max_abs_diff(const Mat2& other) const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(e[i] - other.e[i]));
    return m;
  }
};

struct Eig2 {
  double lo = 0.0;
  double hi = 0.0;
  std::array<complexd, 2> vec_lo{};
  std::array<complexd, 2> vec_hi{};
};

/// Closed-form eigendecomposition of a 2x2 Hermitian matrix; eigenvalues ascending.
Eig2 eig2_hermitian(const Mat2& m, const Tolerances& tol = {});

/// Hermitian inverse square root: R with R*M*R = I. Throws Singular for
/// eigenvalues at or below tol_eq.
Mat2 inv_sqrt2(const Mat2& m, const Tolerances& tol = {});

struct Max1dResult {
  double argmax = 0.0;
  double max = 0.0;
};

/// Dense grid scan (10^4 intervals) followed by golden-section refinement.
/// Handles non-unimodal objectives via the grid seed.
Max1dResult maximize_1d(const std::function<double(double)>& f, double lo, double hi,
                        const Tolerances& tol = {});

struct GridMaxResult {
  std::vector<double> argmax;
  double max = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Deterministic multi-round grid maximization over a box (d <= 4). Each round
/// shrinks the box tenfold around the incumbent; the incumbent value is
/// monotone non-decreasing. The objective may return -infinity to mark
/// infeasible points. OpenMP-parallel when available.
GridMaxResult grid_refine_max(const std::function<double(const std::vector<double>&)>& f,
                              const std::vector<Interval>& box, int coarse = 41,
                              int refine_rounds = 3);

/// Serial reference implementation with identical semantics, kept for testing
/// and benchmarking against the parallel kernel.
GridMaxResult grid_refine_max_serial(
    const std::function<double(const std::vector<double>&)>& f,
    const std::vector<Interval>& box, int coarse = 41, int refine_rounds = 3);

}  // namespace cqnd
