#pragma once

#include "cqnd/core.hpp"
#include "cqnd/maxconf.hpp"

namespace cqnd::oracle {

/// Vertex enumeration of the noncontextual USD triangle.
double usd_nc_oracle(double q1, double c);

/// Dense 1-D scan along the active boundary of the quantum USD region.
double usd_quantum_oracle(double q1, double c);

/// Nested per-receiver 1-D optimization with updated confusability.
double susd_nc_oracle(double q1, double c, int N, const Tolerances& tol = {});

/// Vertex enumeration of the generalized cloning simplex.
double clone2_nc_oracle(double q1, double c, int n, int m);

/// Brute-force primal confidence over rank-1 projectors on a fixed Bloch grid
/// with one refinement round. OpenMP-parallel when available.
double confidence_oracle(const maxconf::QubitEnsemble& ens, int k,
                         const Tolerances& tol = {});

/// Serial reference with identical grid semantics, kept for testing and
/// benchmarking against the parallel kernel.
double confidence_oracle_serial(const maxconf::QubitEnsemble& ens, int k,
                                const Tolerances& tol = {});

/// Positive-semidefiniteness condition of the cloning isometry Gram matrix.
bool duan_guo_feasibility(double s, int n, int m, double alpha1, double alpha2,
                          const Tolerances& tol = {});

}  // namespace cqnd::oracle
