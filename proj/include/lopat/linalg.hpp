#pragma once

#include <vector>

#include "lopat/types.hpp"

namespace lopat::linalg {

/// Complex Schur form A = Z T Z^H with eigenvalue reordering.
class OrderedSchur {
 public:
  explicit OrderedSchur(const CMat& a);

  const CMat& t() const { return t_; }
  const CMat& z() const { return z_; }
  CVec eigenvalues() const { return t_.diagonal(); }

  // Moves the diagonal entries flagged in `select` to the leading block,
  // keeping relative order. Afterwards the first count(select) columns of
  // z() span the corresponding invariant subspace. `select` is indexed by
  // the current diagonal position.
  void reorder(const std::vector<bool>& select);

 private:
  void swap_adjacent(Eigen::Index k);

  CMat t_;
  CMat z_;
};

// Orthonormal basis for the column span (thin QR, full column rank assumed).
CMat orthonormalize(const CMat& columns);

// ||P_a - P_b||_2 for the orthogonal projectors onto span(a) and span(b);
// the sine of the largest principal angle when dimensions agree. Both
// arguments must have orthonormal columns.
double subspace_distance(const CMat& a, const CMat& b);

// Singular values, descending.
Vec singular_values(const CMat& m);

}  // namespace lopat::linalg
