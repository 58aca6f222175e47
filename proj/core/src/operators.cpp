#include "strips/operators.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace strips {

SparseSymOperator SparseSymOperator::from_triplets(
    int dim, const std::vector<Eigen::Triplet<double>>& entries) {
  SparseSymOperator op;
  op.m_.resize(dim, dim);
  op.m_.setFromTriplets(entries.begin(), entries.end());
  op.m_.makeCompressed();
  return op;
}

SparseSymOperator SparseSymOperator::diagonal(Eigen::VectorXd d) {
  SparseSymOperator op;
  const int n = static_cast<int>(d.size());
  op.m_.resize(n, n);
  op.m_.reserve(Eigen::VectorXi::Constant(n, 1));
  for (int i = 0; i < n; ++i) op.m_.insert(i, i) = d[i];
  op.m_.makeCompressed();
  op.diag_ = std::move(d);
  op.diagonal_ = true;
  return op;
}

double SparseSymOperator::max_asymmetry() const {
  Eigen::SparseMatrix<double> d = m_ - Eigen::SparseMatrix<double>(m_.transpose());
  double worst = 0.0;
  for (int k = 0; k < d.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(d, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

void SparseSymOperator::write_coordinate(std::ostream& os) const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> rm(m_);
  for (int k = 0; k < rm.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rm, k); it; ++it) {
      char buf[80];
      std::snprintf(buf, sizeof(buf), "%ld %ld %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value());
      os << buf;
    }
  }
}

void TridiagonalPair::standard_form(Eigen::VectorXd& c_diag,
                                    Eigen::VectorXd& c_off) const {
  const int n = size();
  if ((b_diag.array() <= 0.0).any()) {
    throw std::invalid_argument("TridiagonalPair: B must be positive");
  }
  const Eigen::VectorXd inv_sqrt_b = b_diag.array().rsqrt();
  c_diag = a_diag.array() * inv_sqrt_b.array().square();
  c_off.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    c_off[i] = a_off[i] * inv_sqrt_b[i] * inv_sqrt_b[i + 1];
  }
}

}  // namespace strips
