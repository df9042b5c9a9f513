#pragma once

#include <string>

#include "cqnd/core.hpp"

namespace cqnd::bounds {

enum class Task { Usd, Susd, Pqc1, Pqc2 };

struct TaskParams {
  double q1 = 0.5;  // prior of state 1; q2 = 1 - q1
  double c = 0.0;   // confusability (= squared overlap s^2)
  int N = 1;        // receiver count (SUSD)
  int n = 1;        // input copies (PQC-II)
  int m = 2;        // output copies (PQC-II)
  double p = 1.0;   // depolarizing parameter

  double q2() const { return 1.0 - q1; }
  void validate() const;
};

struct BoundPair {
  double nc = 0.0;
  double quantum = 0.0;
  double advantage = 0.0;  // quantum - nc
};

enum class RegimeLabel { Contextual, Noncontextual };

struct Regime {
  RegimeLabel label = RegimeLabel::Noncontextual;
  double margin = 0.0;  // quantum - nc
  BoundPair bounds;
};

/// Noncontextual feasible region: alpha_k >= 0, alpha_1 + alpha_2 <= 1 - c.
bool nc_region_contains(double a1, double a2, double c, const Tolerances& tol = {});

/// Quantum feasible region: alpha_k >= 0, (1-alpha_1)(1-alpha_2) >= c.
bool q_region_contains(double a1, double a2, double c, const Tolerances& tol = {});

double nc_usd_max(double q1, double c);
double q_usd_max(double q1, double c);
double nc_susd_max(double q1, double c, int N);

/// Equal priors only; piecewise in c with threshold (2^{1/N}-1)^{N/2}.
double q_susd_max_equal(double c, int N);

double nc_clone1_max(double q1, double c);
double nc_clone2_max(double q1, double c, int n, int m);

/// Equal priors only; carries no prior factor.
double q_clone2_max_equal(double c, int n, int m);

/// Asymptotic expression for highly imbalanced priors.
double q_clone2_max_imbalanced(double q1, double c, int n);

Regime regime_classify(Task task, const TaskParams& params, const Tolerances& tol = {});

std::string task_name(Task task);
Task parse_task(const std::string& name);

}  // namespace cqnd::bounds
