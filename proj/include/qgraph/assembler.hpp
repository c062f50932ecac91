#pragma once

#include <span>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/quantum_graph.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// Global blocks of the vertex scattering data. Rows and columns of the 11
/// block are external slots, those of the 22 block internal slots.
struct BlockSystem {
  CMatrix s11;
  CMatrix s12;
  CMatrix s21;
  CMatrix s22;
  Complex momentum{};

  /// [[s11, s12], [s21, s22]].
  CMatrix combined() const;
};

struct PropagationMatrix {
  CMatrix matrix;
  Complex momentum{};
};

/// Scatters per-vertex matrices (indexed by vertex, in local slot order) into
/// the global blocks. No arithmetic: every entry is copied or left zero.
BlockSystem scatter_blocks(const ModeIndex& index, std::span<const CMatrix> local_matrices,
                           Complex momentum = {});

/// Evaluates every local at p and scatters.
BlockSystem assemble_blocks(const QuantumGraph& qg, Complex p);

/// Position of each vertex-local slot in the combined (external; internal)
/// ordering, concatenated over vertices. The block-diagonal sum of the locals
/// satisfies combined()(order[i], order[j]) = diag(i, j).
std::vector<std::size_t> block_ordering(const ModeIndex& index);

/// Block-diagonal sum of the local matrices in vertex order.
CMatrix direct_sum(std::span<const CMatrix> local_matrices);

/// e^{-i p d} for every internal edge, by edge id.
std::vector<Complex> edge_phases(const Graph& g, Complex p);

/// Places edge_factor[e] at (s, partner(s)) for both slots of every internal
/// edge e. For loops this is the antidiagonal block on the two halves.
CMatrix propagation_from_edge_factors(const ModeIndex& index, std::span<const Complex> edge_factor);

PropagationMatrix assemble_propagation(const Graph& g, const ModeIndex& index, Complex p);

}  // namespace qgraph
