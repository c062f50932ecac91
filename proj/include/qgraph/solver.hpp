#pragma once

#include <cstddef>

#include "qgraph/assembler.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/quantum_graph.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// Solves are refused when sigma_min(E - S22) <= threshold * sigma_max.
inline constexpr double kNearPoleThreshold = 1e-12;

struct TotalSMatrix {
  CMatrix matrix;
  Complex momentum{};
  /// Singular values of E(p) - S22(p); empty for graphs without internal edges.
  SingularValueRange condition;
};

/// S11 + S12 (E - S22)^-1 S21 from precomputed blocks. Throws NearPole.
TotalSMatrix total_scattering(const BlockSystem& blocks, const CMatrix& propagation,
                              double threshold = kNearPoleThreshold);

TotalSMatrix total_scattering(const QuantumGraph& qg, Complex p,
                              double threshold = kNearPoleThreshold);

/// B(p) = [E(-p) - S22(-p)]^-1 S21(-p) A(p). Throws NearPole.
CVector internal_modes(const QuantumGraph& qg, Complex p, const CVector& external,
                       double threshold = kNearPoleThreshold);

/// Largest residual of the three defining relations
///   A(p) = S11 A(-p) + S12 B(-p),  B(p) = S21 A(-p) + S22 B(-p),  B(p) = E(p) B(-p)
/// when A(-p) = S_tot(-p) A(p) and both B(p), B(-p) come from internal_modes.
double mode_residual(const QuantumGraph& qg, Complex p, const CVector& external);

/// Truncated multiple-scattering series
///   S11 + S12 sum_{n=0..K} [E(-p) S22]^n E(-p) S21.
/// Oracle only. Throws SeriesDiverges when the spectral radius of E(-p) S22 is >= 1.
CMatrix path_sum_oracle(const QuantumGraph& qg, Complex p, std::size_t max_order);

/// Smallest K with q^(K+1) / (1 - q) < tol, where q is ||E(-p) S22||_2 when
/// that is below one and the spectral radius otherwise. Throws SeriesDiverges.
std::size_t path_sum_order(const QuantumGraph& qg, Complex p, double tol);

/// 0.2 / shortest internal length.
double oracle_imaginary_offset(const Graph& g);

/// ||S_tot(p) S_tot(-p) - I||_max. Throws NearPole.
double involution_defect(const QuantumGraph& qg, Complex p);

/// ||S_tot(p)^H S_tot(p) - I||_max at real p. Throws NearPole.
double unitarity_defect(const QuantumGraph& qg, double p);

}  // namespace qgraph
