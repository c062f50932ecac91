#pragma once

#include <span>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/local_scattering.hpp"

namespace qgraph {

/// A graph, its mode index and one local scattering matrix per vertex.
class QuantumGraph {
 public:
  /// Locals may come in any order. Throws MissingVertexMatrix if a vertex has
  /// none (or a local names a vertex outside the graph) and SizeMismatch if a
  /// vertex has two or a matrix size differs from the vertex degree.
  QuantumGraph(Graph graph, std::vector<LocalScattering> locals);

  const Graph& graph() const { return graph_; }
  const ModeIndex& index() const { return index_; }
  /// Indexed by vertex.
  std::span<const LocalScattering> locals() const { return locals_; }

  bool constant_locals() const;
  bool unitary_locals(double tol = kInvolutionTolerance) const;

 private:
  Graph graph_;
  ModeIndex index_;
  std::vector<LocalScattering> locals_;
};

}  // namespace qgraph
