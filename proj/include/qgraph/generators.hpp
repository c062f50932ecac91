#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/types.hpp"

namespace qgraph {

/// Proper edge colouring of a loop-free graph without parallel edges:
/// n_v(a) is the neighbour of v along its edge of colour a.
class Colouring {
 public:
  /// edge_colour[e] in [0, colours) for every internal edge, by edge id.
  /// Throws InvalidColouring for loops, parallel edges, out-of-range colours
  /// or two edges of one colour at a vertex.
  static Colouring from_edge_colours(const Graph& g, std::span<const std::size_t> edge_colour,
                                     std::size_t colours);

  std::size_t colours() const { return colours_; }
  std::size_t vertex_count() const { return neighbour_.size(); }
  std::optional<std::size_t> neighbour(std::size_t vertex, std::size_t colour) const;
  std::size_t edge_colour(std::size_t edge) const { return edge_colour_[edge]; }
  /// Every vertex has an edge of every colour.
  bool is_regular() const;

 private:
  std::size_t colours_ = 0;
  std::vector<std::size_t> edge_colour_;
  std::vector<std::vector<std::optional<std::size_t>>> neighbour_;
};

struct ColourMatrices {
  /// (E_a)(v, n_v(a)) = 1.
  std::vector<RMatrix> matrices;
  /// Each E_a is symmetric and squares to the identity.
  bool symmetric_involutive = false;
  bool all_commute = false;
};

/// Throws NonRegularColouring unless the colouring is regular.
ColourMatrices commuting_colour_matrices(const Colouring& c);

enum class PlatonicSolid { Tetrahedron, Cube, Octahedron, Dodecahedron, Icosahedron };

std::string_view solid_name(PlatonicSolid s);
/// Throws UnknownSolid.
PlatonicSolid parse_solid(std::string_view name);

struct PlatonicFixture {
  PlatonicSolid solid{};
  /// One external edge per vertex, every internal edge of the given length,
  /// lengths_unit set to that length.
  GraphDocument document;
  /// Absent when no colouring with `degree` colours was found.
  std::optional<Colouring> colouring;
};

/// Tetrahedron and cube follow the classic numbering with colours 0, 1, 2
/// pairing vertices (1-based) as
///   tetrahedron: {14, 23}, {12, 34}, {13, 24}
///   cube:        {12, 34, 56, 78}, {14, 23, 58, 67}, {15, 26, 37, 48}.
/// The other solids come from their standard coordinates and a backtracking
/// colouring. Throws NonPositiveLength for length <= 0.
PlatonicFixture platonic(PlatonicSolid solid, double length,
                         const LocalSpec& local = LocalSpec::kirchhoff());

/// Reorders a local matrix given as [external, colour 0, colour 1, ...] into
/// the vertex's ModeIndex slot order.
CMatrix colour_to_mode_order(const Graph& g, const ModeIndex& index, const Colouring& c,
                             std::size_t vertex, const CMatrix& colour_ordered);

/// The fixture with the same colour-ordered local matrix at every vertex.
GraphDocument platonic_with_colour_local(const PlatonicFixture& fixture,
                                         const CMatrix& colour_ordered);

struct TriangleStarPair {
  GraphDocument triangle;
  /// One vertex, three external edges and loops of lengths d12, d23, d13.
  GraphDocument star;
  /// internal_map[triangle slot] = star slot for the directed half-edges.
  std::vector<std::size_t> internal_map;
};

/// Triangle 1-2-3 with one external edge per vertex and the equivalent
/// single-vertex graph with three loops. The 9x9 star matrix is filled entry
/// by entry from the triangle locals; each local is 3x3 in the order
/// (external, lower neighbour, higher neighbour). Throws NotInvolutive or
/// SizeMismatch for bad locals.
TriangleStarPair triangle_and_star_pair(double d12, double d13, double d23,
                                        const std::array<CMatrix, 3>& locals);

/// Two vertices joined by one edge, one external edge each, both locals
/// [[0, 1], [1, 0]].
GraphDocument line2(double length);
/// Compact interval with 1x1 locals r1, r2 (each +1 or -1).
GraphDocument interval_compact(double length, double r1, double r2);
/// One vertex with one external edge and one loop; Kirchhoff degree 3.
GraphDocument tadpole(double length);
/// line2 with locals [[r, t], [t, -r]], t = sqrt(1 - r^2). Needs |r| <= 1.
GraphDocument fabry_perot(double r, double length);
/// One vertex with n external edges and a Kirchhoff local.
GraphDocument star(std::size_t n);

struct CanonicalParams {
  double length = 1.0;
  double r = 0.6;
  double r1 = -1.0;
  double r2 = -1.0;
  std::size_t degree = 3;
};

/// By name: line2, interval_compact, tadpole, fabry_perot, star. Throws
/// UnknownFixture.
GraphDocument canonical(std::string_view name, const CanonicalParams& params = {});

}  // namespace qgraph
