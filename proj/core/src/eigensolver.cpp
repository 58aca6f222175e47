#include "strips/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <Eigen/SparseCholesky>

#include "strips/errors.hpp"

namespace strips {

namespace {

// Deterministic uniform(-1,1) from raw engine output; avoids the
// implementation-defined std::*_distribution sequences.
Eigen::VectorXd seeded_start(int n, unsigned seed) {
  std::mt19937_64 gen(seed);
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    x[i] = 2.0 * u - 1.0;
  }
  return x;
}

// Negative pivots of the LDL^T factorization of C - x I, C tridiagonal in
// standard form; equals the number of eigenvalues below x.
int count_below(const Eigen::VectorXd& c_diag, const Eigen::VectorXd& c_off,
                double x, double pivmin) {
  const int n = static_cast<int>(c_diag.size());
  int count = 0;
  double d = c_diag[0] - x;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (int i = 1; i < n; ++i) {
    d = c_diag[i] - x - c_off[i - 1] * c_off[i - 1] / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

double pivmin_for(const Eigen::VectorXd& c_off) {
  double m = 0.0;
  for (int i = 0; i < c_off.size(); ++i) m = std::max(m, c_off[i] * c_off[i]);
  const double eps = std::numeric_limits<double>::epsilon();
  return std::max(m * eps * eps, std::numeric_limits<double>::min());
}

}  // namespace

int sturm_count(const TridiagonalPair& T, double threshold) {
  Eigen::VectorXd cd, co;
  T.standard_form(cd, co);
  return count_below(cd, co, threshold, pivmin_for(co));
}

EigResult smallest_eig(const TridiagonalPair& T, const EigOptions& opt) {
  const int n = T.size();
  Eigen::VectorXd cd, co;
  T.standard_form(cd, co);
  const double pivmin = pivmin_for(co);

  // Gershgorin bracket in standard form.
  double lo = cd[0], hi = cd[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(co[i - 1]);
    if (i + 1 < n) r += std::abs(co[i]);
    lo = std::min(lo, cd[i] - r);
    hi = std::max(hi, cd[i] + r);
  }

  int iterations = 0;
  const double eps = std::numeric_limits<double>::epsilon();
  while (hi - lo > 4.0 * eps * std::max({std::abs(lo), std::abs(hi), 1.0}) &&
         iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(cd, co, mid, pivmin) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
    ++iterations;
  }
  const double width = hi - lo;

  // Inverse iteration from strictly below the eigenvalue: C - lo I is
  // positive definite there, so the LDL^T sweep is stable and one pass
  // amplifies the eigendirection to machine precision.
  Eigen::VectorXd z = seeded_start(n, opt.seed);
  z /= z.norm();
  for (int pass = 0; pass < 2; ++pass) {
    Eigen::VectorXd d(n), e(n - 1), y = z;
    d[0] = cd[0] - lo;
    if (std::abs(d[0]) < pivmin) d[0] = pivmin;
    for (int i = 1; i < n; ++i) {
      e[i - 1] = co[i - 1] / d[i - 1];
      d[i] = cd[i] - lo - e[i - 1] * co[i - 1];
      if (std::abs(d[i]) < pivmin) d[i] = pivmin;
    }
    for (int i = 1; i < n; ++i) y[i] -= e[i - 1] * y[i - 1];
    for (int i = 0; i < n; ++i) y[i] /= d[i];
    for (int i = n - 2; i >= 0; --i) y[i] -= e[i] * y[i + 1];
    z = y / y.norm();
  }

  // Rayleigh-quotient polish in standard form.
  Eigen::VectorXd Cz(n);
  for (int i = 0; i < n; ++i) {
    double v = cd[i] * z[i];
    if (i > 0) v += co[i - 1] * z[i - 1];
    if (i + 1 < n) v += co[i] * z[i + 1];
    Cz[i] = v;
  }
  const double value = z.dot(Cz);

  EigResult res;
  res.value = value;
  res.iterations = iterations;
  res.vector = (T.b_diag.array().rsqrt() * z.array()).matrix();
  // z is unit in standard form, so ||x||_B = 1 already, and
  // A x - mu B x = B^{1/2} (C z - mu z).
  const Eigen::VectorXd r = (T.b_diag.array().sqrt() * (Cz - value * z).array()).matrix();
  res.residual = r.norm();
  const double degen_window = std::max(opt.tol, 8.0 * width);
  res.degenerate = count_below(cd, co, value + degen_window, pivmin) -
                       count_below(cd, co, value - degen_window, pivmin) >=
                   2;
  if (res.residual > std::max(opt.tol, 1e3 * eps * std::abs(value))) {
    throw solver_error("smallest_eig(tridiagonal): residual above tolerance",
                       res.residual, iterations);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Sparse pencil: shift-and-invert Lanczos in the B-inner product, with one
// sparse LDL^T factorization of A - shift B providing the inner solves.
// Restarted from the best Ritz vector if a sweep fills up.

EigResult smallest_eig(const SparseSymOperator& A, const SparseSymOperator& B,
                       const EigOptions& opt) {
  if (A.dim() != B.dim()) {
    throw std::invalid_argument("smallest_eig: dimension mismatch");
  }
  if (!B.diagonal_only()) {
    throw std::invalid_argument("smallest_eig: B must be diagonal");
  }
  const int n = A.dim();
  const Eigen::VectorXd& b = B.diagonal_values();
  if ((b.array() <= 0.0).any()) {
    throw std::invalid_argument("smallest_eig: B must be positive definite");
  }

  Eigen::SparseMatrix<double> As = A.matrix();
  if (opt.shift != 0.0) {
    As = As - Eigen::SparseMatrix<double>(opt.shift * B.matrix());
  }
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(As);
  if (solver.info() != Eigen::Success) {
    throw solver_error("smallest_eig: factorization of A - shift B failed", 0.0, 0);
  }

  auto b_norm = [&](const Eigen::VectorXd& v) {
    return std::sqrt(v.dot((b.array() * v.array()).matrix()));
  };
  auto pencil_residual = [&](const Eigen::VectorXd& x, double& theta_out) {
    const Eigen::VectorXd Ax = A.apply(x);
    const Eigen::VectorXd Bx = (b.array() * x.array()).matrix();
    theta_out = x.dot(Ax);  // x is B-normalized
    return (Ax - theta_out * Bx).norm();
  };

  const int max_sweep = std::min(160, n);
  Eigen::VectorXd x = seeded_start(n, opt.seed);
  x /= b_norm(x);

  int applications = 0;
  double best_res = std::numeric_limits<double>::infinity();
  while (true) {
    // One B-Lanczos sweep for the largest eigenvalue of (A - shift B)^{-1} B.
    std::vector<Eigen::VectorXd> V;
    std::vector<double> alpha, beta;
    V.push_back(x);
    bool breakdown = false;
    for (int j = 0; j < max_sweep && applications < opt.max_iter; ++j) {
      Eigen::VectorXd w = solver.solve((b.array() * V[j].array()).matrix());
      ++applications;
      const double a_j = w.dot((b.array() * V[j].array()).matrix());
      alpha.push_back(a_j);
      w -= a_j * V[j];
      if (j > 0) w -= beta[j - 1] * V[j - 1];
      // Full reorthogonalization keeps the basis B-orthonormal.
      for (const auto& v : V) {
        w -= v.dot((b.array() * w.array()).matrix()) * v;
      }
      const double b_j = b_norm(w);
      if (!(b_j > 1e-13 * std::abs(a_j))) {
        breakdown = true;  // invariant subspace found
        break;
      }
      beta.push_back(b_j);
      V.push_back(w / b_j);
    }

    const int m = static_cast<int>(alpha.size());
    if (m == 0) {
      throw solver_error("smallest_eig: Lanczos produced no vectors", best_res,
                         applications);
    }
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      T(i, i) = alpha[i];
      if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
    const Eigen::VectorXd y = es.eigenvectors().col(m - 1);  // largest of T
    Eigen::VectorXd ritz = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) ritz += y[i] * V[i];
    ritz /= b_norm(ritz);

    double theta = 0.0;
    const double res = pencil_residual(ritz, theta);
    best_res = std::min(best_res, res);
    if (opt.verbosity > 0) {
      std::fprintf(stderr, "[smallest_eig] apps %4d  theta %.12g  res %.3e\n",
                   applications, theta, res);
    }

    if (res <= opt.tol || breakdown) {
      if (res > opt.tol) {
        throw solver_error("smallest_eig: stagnated on an invariant subspace",
                           res, applications);
      }
      EigResult out;
      out.value = theta;
      out.vector = ritz;
      out.residual = res;
      out.iterations = applications;
      if (m >= 2) {
        const double mu2 = opt.shift + 1.0 / es.eigenvalues()[m - 2];
        out.degenerate = (mu2 - theta) <= opt.tol * std::max(1.0, std::abs(theta));
      }
      return out;
    }
    if (applications >= opt.max_iter) {
      throw solver_error("smallest_eig: max_iter exhausted", best_res, applications);
    }
    x = ritz;  // restart
  }
}

double rayleigh_quotient(const SparseSymOperator& A, const SparseSymOperator& B,
                         const Eigen::VectorXd& x) {
  const double num = x.dot(A.apply(x));
  const double den = x.dot(B.apply(x));
  return num / den;
}

}  // namespace strips
