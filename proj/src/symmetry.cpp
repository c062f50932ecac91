#include "qgraph/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qgraph/error.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

namespace {

// Characteristic polynomial det(zeta I - m) by Faddeev-LeVerrier, constant
// term first.
Coefficients characteristic_polynomial(const CMatrix& m) {
  const auto n = m.rows();
  Coefficients c(static_cast<std::size_t>(n) + 1);
  c[static_cast<std::size_t>(n)] = 1.0;
  CMatrix mk = CMatrix::Zero(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + c[static_cast<std::size_t>(n - k + 1)] * CMatrix::Identity(n, n);
    c[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return c;
}

}  // namespace

std::vector<SignPattern> joint_sign_patterns(const Colouring& c) {
  const ColourMatrices cm = commuting_colour_matrices(c);
  const auto n = static_cast<Eigen::Index>(c.vertex_count());
  // A generic combination separates the joint eigenspaces.
  RMatrix generic = RMatrix::Zero(n, n);
  for (std::size_t a = 0; a < cm.matrices.size(); ++a) {
    generic += std::sqrt(static_cast<double>(a) + 2.0) * cm.matrices[a];
  }
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(generic);
  std::vector<SignPattern> out;
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::VectorXd v = solver.eigenvectors().col(k);
    SignPattern signs;
    for (const auto& m : cm.matrices) signs.push_back(v.dot(m * v) > 0.0 ? 1 : -1);
    out.push_back(std::move(signs));
  }
  return out;
}

Coefficients sign_factor(const SignPattern& signs, const CMatrix& reduced) {
  // zeta D - R = D (zeta I - D R) since D^2 = I.
  const auto n = reduced.rows();
  CMatrix dr = reduced;
  int det_d = 1;
  for (Eigen::Index i = 0; i < n; ++i) {
    dr.row(i) *= static_cast<double>(signs[static_cast<std::size_t>(i)]);
    det_d *= signs[static_cast<std::size_t>(i)];
  }
  Coefficients c = characteristic_polynomial(dr);
  for (auto& x : c) x *= static_cast<double>(det_d);
  return c;
}

FactorizationReport symmetry_factorization(const PlatonicFixture& fixture, const CMatrix& local,
                                           std::span<const SignPattern> signs, double tol) {
  if (!fixture.colouring) {
    throw Error(Errc::FixtureUnknown, std::string(solid_name(fixture.solid)) +
                                          " has no colouring to reduce with");
  }
  const auto nu = static_cast<Eigen::Index>(fixture.colouring->colours());
  if (local.rows() != nu + 1 || local.cols() != nu + 1) {
    throw Error(Errc::SizeMismatch, "local matrix must be (1 + colours) square");
  }

  FactorizationReport report;
  report.signs = signs.empty() ? joint_sign_patterns(*fixture.colouring)
                               : std::vector<SignPattern>(signs.begin(), signs.end());

  const QuantumGraph qg = realize(platonic_with_colour_local(fixture, local));
  report.assembled = secular_polynomial(qg).coefficients;

  const CMatrix reduced = local.bottomRightCorner(nu, nu);
  report.product = {Complex(1.0)};
  for (const auto& s : report.signs) report.product = multiply(report.product, sign_factor(s, reduced));

  const std::size_t n = std::max(report.assembled.size(), report.product.size());
  double largest = 0.0;
  double diff = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex a = k < report.assembled.size() ? report.assembled[k] : Complex(0.0);
    const Complex b = k < report.product.size() ? report.product[k] : Complex(0.0);
    largest = std::max(largest, std::abs(a));
    diff = std::max(diff, std::abs(a - b));
  }
  report.deviation = largest > 0.0 ? diff / largest : diff;
  report.matches = report.deviation <= tol;
  return report;
}

FactorizationReport symmetry_factorization(const PlatonicFixture& fixture,
                                           std::span<const CMatrix> locals,
                                           std::span<const SignPattern> signs, double tol) {
  if (locals.empty()) throw Error(Errc::MissingVertexMatrix, "no local matrices given");
  for (const auto& m : locals) {
    if (m.rows() != locals[0].rows() || m.cols() != locals[0].cols() ||
        max_abs(CMatrix(m - locals[0])) != 0.0) {
      throw Error(Errc::NonUniformLocals, "the reduction needs the same local at every vertex");
    }
  }
  return symmetry_factorization(fixture, locals[0], signs, tol);
}

}  // namespace qgraph
