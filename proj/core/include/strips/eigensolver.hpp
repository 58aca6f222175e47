#pragma once

#include <Eigen/Dense>

#include "strips/operators.hpp"

namespace strips {

struct EigOptions {
  double tol = 1e-8;     // residual tolerance ||A x - mu B x|| / ||x||_B
  int max_iter = 500;    // inner-solve applications (sparse path)
  unsigned seed = 42;    // start-vector seed
  double shift = 0.0;    // fixed shift below the target eigenvalue
  int verbosity = 0;
};

struct EigResult {
  double value = 0.0;
  Eigen::VectorXd vector;   // B-normalized
  double residual = 0.0;    // ||A x - value B x||_2 / ||x||_B
  int iterations = 0;
  bool degenerate = false;  // second eigenvalue within tol of the first
};

/// Smallest generalized eigenpair of A x = mu B x with A symmetric and B
/// symmetric positive definite diagonal, by shift-and-invert Lanczos in the
/// B-inner product; a single sparse LDL^T factorization of A - shift B
/// provides the inner solves.  Deterministic for a fixed seed.  Throws
/// solver_error (carrying the best residual) when max_iter inner solves are
/// exhausted.
EigResult smallest_eig(const SparseSymOperator& A, const SparseSymOperator& B,
                       const EigOptions& opt = {});

/// Tridiagonal path: Sturm-sequence bisection for the value, one inverse
/// iteration from just below it for the vector.
EigResult smallest_eig(const TridiagonalPair& T, const EigOptions& opt = {});

/// Number of generalized eigenvalues of the pencil strictly below threshold
/// (exact in exact arithmetic, via LDL^T inertia).
int sturm_count(const TridiagonalPair& T, double threshold);

/// Rayleigh quotient x^T A x / x^T B x of an arbitrary probe vector.
double rayleigh_quotient(const SparseSymOperator& A, const SparseSymOperator& B,
                         const Eigen::VectorXd& x);

}  // namespace strips
