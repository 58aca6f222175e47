#pragma once

#include <iosfwd>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace strips {

/// Symmetric sparse operator; symmetry is guaranteed by construction
/// (assemblers insert both halves of every off-diagonal pair).
class SparseSymOperator {
 public:
  SparseSymOperator() = default;

  static SparseSymOperator from_triplets(int dim,
                                         const std::vector<Eigen::Triplet<double>>& entries);
  static SparseSymOperator diagonal(Eigen::VectorXd d);

  int dim() const { return static_cast<int>(m_.rows()); }
  bool diagonal_only() const { return diagonal_; }

  const Eigen::SparseMatrix<double>& matrix() const { return m_; }
  /// Only meaningful for diagonal operators.
  const Eigen::VectorXd& diagonal_values() const { return diag_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const { return m_ * x; }

  /// max |A - A^T| entry; zero for every assembled operator.
  double max_asymmetry() const;

  /// Coordinate text export, one "row col value" line per stored entry
  /// (0-based indices, row-major order).
  void write_coordinate(std::ostream& os) const;

 private:
  Eigen::SparseMatrix<double> m_;
  Eigen::VectorXd diag_;
  bool diagonal_ = false;
};

/// Symmetric tridiagonal pencil (A, B) with diagonal positive B.
struct TridiagonalPair {
  Eigen::VectorXd a_diag;  // n
  Eigen::VectorXd a_off;   // n - 1
  Eigen::VectorXd b_diag;  // n, strictly positive

  int size() const { return static_cast<int>(a_diag.size()); }

  /// Standard-form reduction C = B^{-1/2} A B^{-1/2} (stays tridiagonal).
  void standard_form(Eigen::VectorXd& c_diag, Eigen::VectorXd& c_off) const;
};

}  // namespace strips
