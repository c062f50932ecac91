#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qgraph/polynomial.hpp"
#include "qgraph/quantum_graph.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// det(E(p) - S22(p)); 1 for graphs without internal edges.
Complex secular_determinant(const QuantumGraph& qg, Complex p);

/// det(E - S22) as a polynomial in zeta = exp(-i p unit).
struct SecularPolynomial {
  double unit = 1.0;
  /// c_0 .. c_D.
  Coefficients coefficients;
  /// Sum over directed internal slots of length / unit.
  std::size_t degree_bound = 0;
  /// length / unit for each internal edge, by edge id.
  std::vector<std::size_t> edge_multiples;

  /// The matrix the polynomial came from, kept so roots can be polished
  /// against det(E(zeta) - S22) itself rather than the fitted coefficients.
  /// Empty when the polynomial was built by hand.
  CMatrix s22;
  /// Per internal slot: its partner slot and the multiple of its edge.
  std::vector<std::size_t> slot_partner;
  std::vector<std::size_t> slot_multiple;

  Complex at_zeta(Complex zeta) const { return evaluate(coefficients, zeta); }
  Complex at_momentum(Complex p) const;

  /// E(zeta) - S22 with E built from the slot data. Needs s22.
  CMatrix secular_matrix(Complex zeta) const;
};

/// Integer multiples length / unit per edge. Throws IncommensurableLengths
/// unless every ratio is within 1e-9 (relative) of a positive integer.
std::vector<std::size_t> edge_multiples(const Graph& g, double unit);

/// Fits det(E - S22) from 2(D + 1) samples on the unit circle and checks the
/// fit at 8 held-out points. `unit` overrides the graph's declared
/// lengths_unit; one of the two is required (IncommensurableLengths
/// otherwise). Throws NonConstantLocals and FitResidualTooLarge.
SecularPolynomial secular_polynomial(const QuantumGraph& qg, std::optional<double> unit = {});

/// Relative trimming threshold applied before root finding.
inline constexpr double kTrimTolerance = 1e-12;

/// All nonzero roots in zeta with multiplicities. Throws
/// DegenerateConstantPolynomial when the trimmed polynomial has degree 0.
/// When the polynomial carries its matrix, each root of multiplicity m is
/// polished by up to five steps z -= m / tr(M^-1 dM/dzeta), M = E(zeta) - S22.
std::vector<PolynomialRoot> find_poles(const SecularPolynomial& poly);

/// Principal solution of exp(-i p unit) = zeta, i.e. p = i Log(zeta) / unit.
Complex principal_momentum(Complex zeta, double unit);

struct Pole {
  Complex zeta;
  Complex momentum;
  std::size_t multiplicity = 1;
  /// False for zeros of the determinant that S_tot does not see (modes that
  /// never reach an external edge). Always true on compact graphs.
  bool couples = true;
};

/// Classifies every root of the secular polynomial by the principal part of
/// S_tot(zeta) on a small circle around it. Locals must be constant.
std::vector<Pole> classify_poles(const QuantumGraph& qg, const SecularPolynomial& poly);

/// The roots from classify_poles that are poles of S_tot.
std::vector<Pole> scattering_poles(const QuantumGraph& qg, const SecularPolynomial& poly);

/// S_tot with every edge phase replaced by zeta^multiple. Throws NearPole.
CMatrix total_scattering_at_zeta(const QuantumGraph& qg, const SecularPolynomial& poly,
                                 Complex zeta);

struct SpectrumOptions {
  /// Use the secular polynomial in this unit instead of the real-axis scan.
  std::optional<double> unit;
  /// Final accuracy of each root in p.
  double tolerance = 1e-10;
};

/// Real p in (p_min, p_max] where det(E(p) - S22(p)) = 0 on a compact graph,
/// ascending. Throws EmptyInterval and NotCompact.
std::vector<double> compact_spectrum(const QuantumGraph& qg, double p_min, double p_max,
                                     const SpectrumOptions& options = {});

}  // namespace qgraph
