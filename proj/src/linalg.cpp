#include "lopat/linalg.hpp"

#include <stdexcept>

namespace lopat::linalg {

OrderedSchur::OrderedSchur(const CMat& a) {
  Eigen::ComplexSchur<CMat> schur(a);
  if (schur.info() != Eigen::Success) throw std::runtime_error("complex Schur decomposition failed");
  t_ = schur.matrixT();
  z_ = schur.matrixU();
}

void OrderedSchur::swap_adjacent(Eigen::Index k) {
  const cplx t11 = t_(k, k);
  const cplx t22 = t_(k + 1, k + 1);
  // First column of G is the eigenvector of the 2x2 block for t22.
  const cplx x1 = t_(k, k + 1);
  const cplx x2 = t22 - t11;
  const double norm = std::hypot(std::abs(x1), std::abs(x2));
  if (norm == 0.0) return;
  const cplx c = x1 / norm;
  const cplx s = x2 / norm;
  Eigen::Matrix2cd g;
  g << c, -std::conj(s), s, std::conj(c);

  const Eigen::Index n = t_.rows();
  t_.middleRows(k, 2) = (g.adjoint() * t_.middleRows(k, 2)).eval();
  t_.middleCols(k, 2) = (t_.middleCols(k, 2) * g).eval();
  z_.middleCols(k, 2) = (z_.middleCols(k, 2) * g).eval();
  t_(k + 1, k) = 0.0;
  t_(k, k) = t22;
  t_(k + 1, k + 1) = t11;
  for (Eigen::Index i = k + 2; i < n; ++i) {
    t_(i, k) = 0.0;
    t_(i, k + 1) = 0.0;
  }
}

void OrderedSchur::reorder(const std::vector<bool>& select) {
  const auto n = t_.rows();
  if (static_cast<Eigen::Index>(select.size()) != n) {
    throw std::invalid_argument("OrderedSchur::reorder: selection size mismatch");
  }
  std::vector<bool> sel = select;
  Eigen::Index filled = 0;
  for (Eigen::Index pos = 0; pos < n; ++pos) {
    if (!sel[pos]) continue;
    for (Eigen::Index k = pos; k > filled; --k) {
      swap_adjacent(k - 1);
      std::swap(sel[k - 1], sel[k]);
    }
    ++filled;
  }
}

CMat orthonormalize(const CMat& columns) {
  Eigen::HouseholderQR<CMat> qr(columns);
  return qr.householderQ() * CMat::Identity(columns.rows(), columns.cols());
}

double subspace_distance(const CMat& a, const CMat& b) {
  const CMat diff = a * a.adjoint() - b * b.adjoint();
  if (diff.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(diff);
  return svd.singularValues()(0);
}

Vec singular_values(const CMat& m) {
  Eigen::JacobiSVD<CMat> svd(m);
  return svd.singularValues();
}

}  // namespace lopat::linalg
