#pragma once

#include <span>
#include <vector>

#include "qgraph/generators.hpp"
#include "qgraph/polynomial.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// Joint eigenvalue signs of the commuting colour matrices: one row of
/// +-1 per joint eigenvector, one entry per colour.
using SignPattern = std::vector<int>;

std::vector<SignPattern> joint_sign_patterns(const Colouring& c);

/// Coefficients of det(zeta D - R) for D = diag(signs).
Coefficients sign_factor(const SignPattern& signs, const CMatrix& reduced);

struct FactorizationReport {
  bool matches = false;
  /// max_k |assembled_k - product_k| / max_k |assembled_k|.
  double deviation = 0.0;
  Coefficients assembled;
  Coefficients product;
  std::vector<SignPattern> signs;
};

/// Compares det(E - S22) of the fixture, with `reduced` (the internal block of
/// a colour-ordered local) plus the external row/column of `local` at every
/// vertex, against prod_v det(zeta D_v - reduced). Signs default to
/// joint_sign_patterns. Throws FixtureUnknown without a colouring.
FactorizationReport symmetry_factorization(const PlatonicFixture& fixture, const CMatrix& local,
                                           std::span<const SignPattern> signs = {},
                                           double tol = 1e-9);

/// Same, with one colour-ordered local per vertex; throws NonUniformLocals
/// unless they are all equal.
FactorizationReport symmetry_factorization(const PlatonicFixture& fixture,
                                           std::span<const CMatrix> locals,
                                           std::span<const SignPattern> signs = {},
                                           double tol = 1e-9);

inline bool symmetry_factor_check(const PlatonicFixture& fixture, const CMatrix& local) {
  return symmetry_factorization(fixture, local).matches;
}

}  // namespace qgraph
