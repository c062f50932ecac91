#pragma once

#include <vector>

#include "qgraph/types.hpp"

namespace qgraph {

/// Dense LU factorisation with partial pivoting, PA = LU. The elimination
/// updates run through kernels::caxpy.
class LuDecomposition {
 public:
  explicit LuDecomposition(CMatrix a);

  Eigen::Index size() const { return lu_.rows(); }

  /// True when an exactly zero pivot was met.
  bool singular() const { return singular_; }

  Complex determinant() const;

  /// Solves A x = b column by column. Throws std::domain_error if singular().
  CMatrix solve(const CMatrix& rhs) const;
  CVector solve(const CVector& rhs) const;

 private:
  void solve_in_place(Complex* column) const;

  CMatrix lu_;
  std::vector<Eigen::Index> pivots_;
  int sign_ = 1;
  bool singular_ = false;
};

/// det(a); the empty matrix has determinant 1.
Complex determinant(const CMatrix& a);

struct SingularValueRange {
  double min = 0.0;
  double max = 0.0;
  bool empty = false;

  /// sigma_min / sigma_max; 1 for the empty matrix, 0 for the zero matrix.
  double ratio() const {
    if (empty) return 1.0;
    return max > 0.0 ? min / max : 0.0;
  }
};

SingularValueRange singular_value_range(const CMatrix& a);

/// Spectral radius via a dense eigensolver.
double spectral_radius(const CMatrix& a);

}  // namespace qgraph
