#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qgraph/types.hpp"

namespace qgraph {

/// Dense complex polynomial coefficients; entry k multiplies z^k.
using Coefficients = std::vector<Complex>;

Complex evaluate(std::span<const Complex> c, Complex z);
std::vector<Complex> evaluate(std::span<const Complex> c, std::span<const Complex> z);

/// sum_k |c_k| |z|^k: the size of the terms cancelling in evaluate(c, z).
double evaluation_scale(std::span<const Complex> c, Complex z);

Coefficients derivative(std::span<const Complex> c);
Coefficients multiply(std::span<const Complex> a, std::span<const Complex> b);

/// Coefficients with |c_k| <= rel * max|c| dropped from both ends; the
/// polynomial equals z^valuation * sum_k coefficients[k] z^k up to the
/// dropped terms.
struct TrimmedPolynomial {
  std::size_t valuation = 0;
  Coefficients coefficients;

  std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

TrimmedPolynomial trim(std::span<const Complex> c, double rel);

/// Inverse DFT: given f at z_k = exp(2 pi i k / M), k = 0..M-1, returns the
/// M coefficients of the interpolating polynomial of degree < M.
Coefficients fit_unit_circle(std::span<const Complex> samples);

struct PolynomialRoot {
  Complex value;
  std::size_t multiplicity = 1;
};

/// Nonzero roots of a polynomial whose constant and leading coefficients are
/// nonzero. Companion-matrix eigenvalues are grouped into clusters; a cluster
/// of m eigenvalues is polished as one m-fold root by Newton on the (m-1)-th
/// derivative and kept as such if the lower derivatives vanish there,
/// otherwise each eigenvalue is polished on its own. Roots closer than
/// `merge_tol` are merged. Sorted by modulus, then argument.
std::vector<PolynomialRoot> polynomial_roots(std::span<const Complex> c, double merge_tol = 1e-8);

}  // namespace qgraph
