#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qgraph/types.hpp"

namespace qgraph {

// Vertex indices are 0-based in memory. The file format is 1-based.

struct InternalEdgeSpec {
  std::size_t u = 0;
  std::size_t v = 0;  // u == v is a loop
  double length = 1.0;
};

struct ExternalEdgeSpec {
  std::size_t vertex = 0;
};

struct GraphSpec {
  std::size_t vertices = 0;
  std::vector<InternalEdgeSpec> internal_edges;
  std::vector<ExternalEdgeSpec> external_edges;
  /// Declared commensurability unit: every length is an integer multiple.
  std::optional<double> lengths_unit;
};

struct InternalEdge {
  std::size_t id = 0;
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
  /// Position among the edges joining the same (unordered) vertex pair, in
  /// insertion order. Loops are numbered among the loops at their vertex.
  std::size_t multiplicity_index = 0;

  bool is_loop() const { return u == v; }
};

struct ExternalEdge {
  std::size_t id = 0;
  std::size_t vertex = 0;
};

/// A validated, immutable finite metric graph with external half-lines.
class Graph {
 public:
  /// Throws Error with DanglingVertexReference, NonPositiveLength or
  /// DisconnectedGraph.
  static Graph build(GraphSpec spec);

  std::size_t vertex_count() const { return spec_.vertices; }
  const std::vector<InternalEdge>& internal_edges() const { return internal_; }
  const std::vector<ExternalEdge>& external_edges() const { return external_; }

  std::size_t external_count() const { return external_.size(); }
  std::size_t internal_count() const { return internal_.size(); }

  std::size_t external_degree(std::size_t vertex) const { return ext_degree_[vertex]; }
  /// Internal half-edges at the vertex; a loop contributes two.
  std::size_t internal_degree(std::size_t vertex) const { return int_degree_[vertex]; }
  std::size_t degree(std::size_t vertex) const {
    return ext_degree_[vertex] + int_degree_[vertex];
  }
  /// Number of internal edges joining a and b (loops when a == b).
  std::size_t multiplicity(std::size_t a, std::size_t b) const;

  std::optional<double> lengths_unit() const { return spec_.lengths_unit; }
  bool is_compact() const { return external_.empty(); }
  double total_length() const;
  /// Shortest internal length; 0 when there are no internal edges.
  double min_length() const;

  const GraphSpec& spec() const { return spec_; }

 private:
  Graph() = default;

  GraphSpec spec_;
  std::vector<InternalEdge> internal_;
  std::vector<ExternalEdge> external_;
  std::vector<std::size_t> ext_degree_;
  std::vector<std::size_t> int_degree_;
};

/// One directed copy of an internal edge.
struct InternalSlot {
  std::size_t tail = 0;
  std::size_t head = 0;
  std::size_t edge = 0;
  std::size_t multiplicity_index = 0;
  /// 0 for ordinary edges; 0 or 1 for the two halves of a loop.
  int half = 0;
  /// The slot this one is paired with by propagation along the edge.
  std::size_t partner = 0;
};

struct LocalSlot {
  bool external = false;
  /// Index into the external or the internal slot space.
  std::size_t slot = 0;

  friend bool operator==(const LocalSlot&, const LocalSlot&) = default;
};

/// Deterministic numbering of external edges and directed internal
/// half-edges.
///
/// External slots are ordered by (vertex, edge id). Internal slots are ordered
/// lexicographically by (tail, head, multiplicity index, half). The local
/// ordering at a vertex lists its external slots first, then its internal
/// slots in global order, so neighbours appear by ascending label and each
/// loop takes two consecutive positions.
class ModeIndex {
 public:
  explicit ModeIndex(const Graph& graph);

  std::size_t external_size() const { return external_edge_at_.size(); }
  std::size_t internal_size() const { return internal_.size(); }

  std::size_t external_slot(std::size_t external_edge_id) const {
    return external_slot_of_[external_edge_id];
  }
  std::size_t external_edge_at(std::size_t slot) const { return external_edge_at_[slot]; }
  const InternalSlot& internal(std::size_t slot) const { return internal_[slot]; }
  std::span<const InternalSlot> internal_slots() const { return internal_; }

  /// Internal slot of `edge` leaving `tail`; for loops, `half` picks the copy.
  std::size_t internal_slot(std::size_t edge, std::size_t tail, int half = 0) const;

  std::size_t vertex_count() const { return local_.size(); }
  std::span<const LocalSlot> local_slots(std::size_t vertex) const { return local_[vertex]; }

  friend bool operator==(const ModeIndex& a, const ModeIndex& b);

 private:
  std::vector<std::size_t> external_slot_of_;
  std::vector<std::size_t> external_edge_at_;
  std::vector<InternalSlot> internal_;
  std::vector<std::vector<LocalSlot>> local_;
};

inline ModeIndex mode_index(const Graph& graph) { return ModeIndex(graph); }

/// Permutation matrix P with P(perm[i], i) = 1, so (P x)[perm[i]] = x[i].
/// Throws SizeMismatch unless perm is a permutation of the slot space.
RMatrix external_permutation(const Graph& graph, std::span<const std::size_t> perm);
RMatrix internal_permutation(const Graph& graph, std::span<const std::size_t> perm);
RMatrix permutation_matrix(std::span<const std::size_t> perm);

}  // namespace qgraph
