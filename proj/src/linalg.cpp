#include "qgraph/linalg.hpp"

#include <span>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qgraph/kernels.hpp"

namespace qgraph {

namespace {

std::span<Complex> column_tail(CMatrix& m, Eigen::Index col, Eigen::Index from) {
  return {m.col(col).data() + from, static_cast<std::size_t>(m.rows() - from)};
}

}  // namespace

LuDecomposition::LuDecomposition(CMatrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LU of a non-square matrix");
  const Eigen::Index n = lu_.rows();
  pivots_.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::norm(lu_(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double v = std::norm(lu_(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    pivots_[static_cast<std::size_t>(k)] = pivot;
    if (pivot != k) {
      lu_.row(k).swap(lu_.row(pivot));
      sign_ = -sign_;
    }
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    const Complex inv = 1.0 / lu_(k, k);
    for (Eigen::Index i = k + 1; i < n; ++i) lu_(i, k) *= inv;
    if (k + 1 == n) break;
    const auto multipliers = column_tail(lu_, k, k + 1);
    for (Eigen::Index j = k + 1; j < n; ++j) {
      kernels::caxpy(-lu_(k, j), multipliers, column_tail(lu_, j, k + 1));
    }
  }
}

Complex LuDecomposition::determinant() const {
  if (singular_) return 0.0;
  Complex det = static_cast<double>(sign_);
  for (Eigen::Index k = 0; k < lu_.rows(); ++k) det *= lu_(k, k);
  return det;
}

void LuDecomposition::solve_in_place(Complex* column) const {
  const Eigen::Index n = lu_.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index p = pivots_[static_cast<std::size_t>(k)];
    if (p != k) std::swap(column[k], column[p]);
  }
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (column[k] == 0.0) continue;
    kernels::caxpy(-column[k],
                   {lu_.col(k).data() + k + 1, static_cast<std::size_t>(n - k - 1)},
                   {column + k + 1, static_cast<std::size_t>(n - k - 1)});
  }
  for (Eigen::Index k = n; k-- > 0;) {
    column[k] /= lu_(k, k);
    if (k == 0 || column[k] == 0.0) continue;
    kernels::caxpy(-column[k], {lu_.col(k).data(), static_cast<std::size_t>(k)},
                   {column, static_cast<std::size_t>(k)});
  }
}

CMatrix LuDecomposition::solve(const CMatrix& rhs) const {
  if (singular_) throw std::domain_error("solve with a singular LU factorisation");
  if (rhs.rows() != lu_.rows()) throw std::invalid_argument("LU solve: row count mismatch");
  CMatrix x = rhs;
  for (Eigen::Index j = 0; j < x.cols(); ++j) solve_in_place(x.col(j).data());
  return x;
}

CVector LuDecomposition::solve(const CVector& rhs) const {
  if (singular_) throw std::domain_error("solve with a singular LU factorisation");
  if (rhs.size() != lu_.rows()) throw std::invalid_argument("LU solve: size mismatch");
  CVector x = rhs;
  solve_in_place(x.data());
  return x;
}

Complex determinant(const CMatrix& a) {
  if (a.size() == 0) return 1.0;
  return LuDecomposition(a).determinant();
}

SingularValueRange singular_value_range(const CMatrix& a) {
  if (a.size() == 0) return {0.0, 0.0, true};
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  return {s(s.size() - 1), s(0), false};
}

double spectral_radius(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMatrix> solver(a, false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace qgraph
