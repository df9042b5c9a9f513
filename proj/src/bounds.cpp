#include "cqnd/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace cqnd::bounds {

void TaskParams::validate() const {
  if (q1 < 0.0 || q1 > 1.0) throw InvalidArgument("q1 must lie in [0,1]");
  if (c < 0.0 || c > 1.0) throw InvalidArgument("c must lie in [0,1]");
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (n < 1 || m < n) throw InvalidArgument("copy counts require m >= n >= 1");
  if (p < 0.0 || p > 1.0) throw InvalidArgument("p must lie in [0,1]");
}

bool nc_region_contains(double a1, double a2, double c, const Tolerances& tol) {
  return a1 >= -tol.tol_eq && a2 >= -tol.tol_eq && a1 + a2 <= 1.0 - c + tol.tol_eq;
}

bool q_region_contains(double a1, double a2, double c, const Tolerances& tol) {
  return a1 >= -tol.tol_eq && a2 >= -tol.tol_eq &&
         (1.0 - a1) * (1.0 - a2) >= c - tol.tol_eq;
}

double nc_usd_max(double q1, double c) {
  return std::max(q1, 1.0 - q1) * (1.0 - c);
}

double q_usd_max(double q1, double c) {
  const double q2 = 1.0 - q1;
  if (c <= 0.0) return 1.0;
  if (q1 <= 0.0 || q1 >= 1.0) return std::max(q1, q2) * (1.0 - c);
  const double s = std::sqrt(c);
  const double a1 = 1.0 - std::sqrt(q2 / q1) * s;
  const double a2 = 1.0 - std::sqrt(q1 / q2) * s;
  if (a1 >= 0.0 && a1 <= 1.0 && a2 >= 0.0 && a2 <= 1.0) {
    return 1.0 - 2.0 * std::sqrt(q1 * q2) * s;
  }
  return std::max(q1, q2) * (1.0 - c);
}

double nc_susd_max(double q1, double c, int N) {
  if (N < 1) throw InvalidArgument("N must be >= 1");
  const double base = 1.0 - std::pow(c, 1.0 / N);
  return std::max(q1, 1.0 - q1) * std::pow(base, N);
}

double q_susd_max_equal(double c, int N) {
  if (N < 2) throw InvalidArgument("q_susd_max_equal requires N >= 2");
  const double threshold = std::pow(std::pow(2.0, 1.0 / N) - 1.0, N / 2.0);
  if (c < threshold) {
    return std::pow(1.0 - std::pow(c, 1.0 / (2.0 * N)), N);
  }
  return 0.5 * std::pow(1.0 - std::pow(c, 1.0 / N), N);
}

double nc_clone1_max(double q1, double c) {
  return std::max(q1, 1.0 - q1) * (1.0 - c);
}

double nc_clone2_max(double q1, double c, int n, int m) {
  if (n < 1 || m < n) throw InvalidArgument("copy counts require m >= n >= 1");
  const double q = std::max(q1, 1.0 - q1);
  if (n == m) return q;
  if (c >= 1.0) return q * static_cast<double>(n) / m;  // continuity limit
  return q * (1.0 - std::pow(c, n)) / (1.0 - std::pow(c, m));
}

double q_clone2_max_equal(double c, int n, int m) {
  if (n < 1 || m < n) throw InvalidArgument("copy counts require m >= n >= 1");
  if (n == m) return 1.0;
  const double s = std::sqrt(c);
  if (s >= 1.0) return static_cast<double>(n) / m;  // continuity limit
  return (1.0 - std::pow(s, n)) / (1.0 - std::pow(s, m));
}

double q_clone2_max_imbalanced(double q1, double c, int n) {
  return std::max(q1, 1.0 - q1) * (1.0 - std::pow(c, n));
}

Regime regime_classify(Task task, const TaskParams& params, const Tolerances& tol) {
  params.validate();
  const bool equal = std::abs(params.q1 - 0.5) <= tol.tol_eq;
  BoundPair b;
  switch (task) {
    case Task::Usd:
      b.nc = nc_usd_max(params.q1, params.c);
      b.quantum = q_usd_max(params.q1, params.c);
      break;
    case Task::Susd:
      if (!equal) {
        throw UnsupportedCombination("no quantum formula for unequal priors");
      }
      b.nc = nc_susd_max(params.q1, params.c, params.N);
      b.quantum = params.N == 1 ? q_usd_max(params.q1, params.c)
                                : q_susd_max_equal(params.c, params.N);
      break;
    case Task::Pqc1:
      b.nc = nc_clone1_max(params.q1, params.c);
      b.quantum = q_usd_max(params.q1, params.c);  // IDP limit
      break;
    case Task::Pqc2:
      b.nc = nc_clone2_max(params.q1, params.c, params.n, params.m);
      b.quantum = equal ? q_clone2_max_equal(params.c, params.n, params.m)
                        : q_clone2_max_imbalanced(params.q1, params.c, params.n);
      break;
  }
  b.advantage = b.quantum - b.nc;
  Regime r;
  r.bounds = b;
  r.margin = b.advantage;
  r.label = r.margin > tol.tol_eq ? RegimeLabel::Contextual : RegimeLabel::Noncontextual;
  return r;
}

std::string task_name(Task task) {
  switch (task) {
    case Task::Usd: return "usd";
    case Task::Susd: return "susd";
    case Task::Pqc1: return "pqc1";
    case Task::Pqc2: return "pqc2";
  }
  return "?";
}

Task parse_task(const std::string& name) {
  if (name == "usd") return Task::Usd;
  if (name == "susd") return Task::Susd;
  if (name == "pqc1") return Task::Pqc1;
  if (name == "pqc2") return Task::Pqc2;
  throw InvalidArgument("unknown task: " + name);
}

}  // namespace cqnd::bounds
