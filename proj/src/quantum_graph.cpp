#include "qgraph/quantum_graph.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

std::vector<LocalScattering> order_by_vertex(const Graph& g, std::vector<LocalScattering> locals) {
  const std::size_t n = g.vertex_count();
  std::vector<std::optional<LocalScattering>> slots(n);
  for (auto& s : locals) {
    const std::size_t v = s.vertex();
    if (v >= n) {
      throw Error(Errc::MissingVertexMatrix,
                  "local matrix given for missing vertex " + std::to_string(v + 1));
    }
    if (slots[v]) {
      throw Error(Errc::SizeMismatch, "two local matrices for vertex " + std::to_string(v + 1));
    }
    if (s.size() != g.degree(v)) {
      throw Error(Errc::SizeMismatch, "vertex " + std::to_string(v + 1) + " has degree " +
                                          std::to_string(g.degree(v)) + " but its local matrix is " +
                                          std::to_string(s.size()) + "x" +
                                          std::to_string(s.size()));
    }
    slots[v] = std::move(s);
  }
  std::vector<LocalScattering> out;
  out.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!slots[v]) {
      throw Error(Errc::MissingVertexMatrix, "no local matrix for vertex " + std::to_string(v + 1));
    }
    out.push_back(std::move(*slots[v]));
  }
  return out;
}

}  // namespace

QuantumGraph::QuantumGraph(Graph graph, std::vector<LocalScattering> locals)
    : graph_(std::move(graph)),
      index_(graph_),
      locals_(order_by_vertex(graph_, std::move(locals))) {}

bool QuantumGraph::constant_locals() const {
  return std::all_of(locals_.begin(), locals_.end(),
                     [](const LocalScattering& s) { return s.is_constant(); });
}

bool QuantumGraph::unitary_locals(double tol) const {
  return std::all_of(locals_.begin(), locals_.end(),
                     [tol](const LocalScattering& s) { return s.is_unitary(tol); });
}

}  // namespace qgraph
