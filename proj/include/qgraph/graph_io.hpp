#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/quantum_graph.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// How a vertex's local matrix is given in a graph document.
struct LocalSpec {
  enum class Kind { Kirchhoff, Tetra2, Matrix };

  Kind kind = Kind::Kirchhoff;
  CMatrix matrix;  // Kind::Matrix only

  static LocalSpec kirchhoff() { return {}; }
  static LocalSpec tetra2() { return {Kind::Tetra2, {}}; }
  static LocalSpec explicit_matrix(CMatrix m) { return {Kind::Matrix, std::move(m)}; }
};

/// The on-disk description of a quantum graph.
///
///   {
///     "vertices": 2,
///     "internal_edges": [{"u": 1, "v": 2, "length": 1.5}],
///     "external_edges": [{"vertex": 1}, {"vertex": 2}],
///     "lengths_unit": "1/2",
///     "locals": [{"family": "kirchhoff"}, {"matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}]
///   }
///
/// Vertex labels are 1-based. lengths_unit is optional and may be a number or
/// a "p/q" string. locals is optional (Kirchhoff everywhere when absent);
/// otherwise it lists one entry per vertex, in vertex order. Matrix entries
/// are [re, im] pairs or plain reals. Unknown fields are rejected.
struct GraphDocument {
  GraphSpec graph;
  std::vector<LocalSpec> locals;
};

/// Throws Error(ParseError) for malformed JSON, wrong types and unknown
/// fields. Range checks are left to realize().
GraphDocument parse_graph_document(std::string_view text);
GraphDocument load_graph_document(const std::filesystem::path& path);

std::string to_json(const GraphDocument& doc);

/// Builds and validates the graph and its locals.
QuantumGraph realize(const GraphDocument& doc);

/// The local matrix a spec produces at a vertex of the given degree.
LocalScattering make_local(const LocalSpec& spec, std::size_t vertex, std::size_t degree);

}  // namespace qgraph
