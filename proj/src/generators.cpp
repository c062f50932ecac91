#include "qgraph/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "qgraph/error.hpp"
#include "qgraph/local_scattering.hpp"

namespace qgraph {

namespace {

using Pair = std::array<std::size_t, 2>;

struct EdgeList {
  std::size_t vertices = 0;
  std::vector<Pair> edges;
  std::vector<std::size_t> colour;  // empty when not prescribed
  std::size_t degree = 0;
};

// 1-based pairs grouped by colour.
EdgeList from_colour_classes(std::size_t vertices,
                             std::initializer_list<std::initializer_list<Pair>> classes) {
  EdgeList out;
  out.vertices = vertices;
  out.degree = classes.size();
  std::size_t c = 0;
  for (const auto& cls : classes) {
    for (const auto& e : cls) {
      out.edges.push_back({e[0] - 1, e[1] - 1});
      out.colour.push_back(c);
    }
    ++c;
  }
  return out;
}

using Point = std::array<double, 3>;

EdgeList from_coordinates(const std::vector<Point>& pts) {
  auto dist = [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += (pts[a][k] - pts[b][k]) * (pts[a][k] - pts[b][k]);
    return std::sqrt(s);
  };
  double shortest = INFINITY;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) shortest = std::min(shortest, dist(a, b));
  }
  EdgeList out;
  out.vertices = pts.size();
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      if (dist(a, b) < shortest * (1.0 + 1e-9)) out.edges.push_back({a, b});
    }
  }
  out.degree = 2 * out.edges.size() / out.vertices;
  return out;
}

// Backtracking proper colouring with `colours` colours; empty if none found
// within the node budget.
std::vector<std::size_t> colour_edges(const EdgeList& g, std::size_t colours) {
  const std::size_t m = g.edges.size();
  std::vector<std::size_t> colour(m, colours);
  std::vector<std::vector<bool>> used(g.vertices, std::vector<bool>(colours, false));
  std::size_t budget = 2'000'000;
  std::function<bool(std::size_t)> place = [&](std::size_t e) {
    if (e == m) return true;
    if (budget-- == 0) return false;
    const auto [u, v] = g.edges[e];
    for (std::size_t c = 0; c < colours; ++c) {
      if (used[u][c] || used[v][c]) continue;
      used[u][c] = used[v][c] = true;
      colour[e] = c;
      if (place(e + 1)) return true;
      used[u][c] = used[v][c] = false;
    }
    return false;
  };
  if (!place(0)) return {};
  return colour;
}

EdgeList solid_edges(PlatonicSolid s) {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (s) {
    case PlatonicSolid::Tetrahedron:
      return from_colour_classes(4, {{{1, 4}, {2, 3}}, {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}});
    case PlatonicSolid::Cube:
      return from_colour_classes(8, {{{1, 2}, {3, 4}, {5, 6}, {7, 8}},
                                     {{1, 4}, {2, 3}, {5, 8}, {6, 7}},
                                     {{1, 5}, {2, 6}, {3, 7}, {4, 8}}});
    case PlatonicSolid::Octahedron:
      return from_coordinates({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
    case PlatonicSolid::Dodecahedron: {
      std::vector<Point> pts;
      for (double x : {-1.0, 1.0})
        for (double y : {-1.0, 1.0})
          for (double z : {-1.0, 1.0}) pts.push_back({x, y, z});
      for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
          pts.push_back({0.0, a / phi, b * phi});
          pts.push_back({a / phi, b * phi, 0.0});
          pts.push_back({a * phi, 0.0, b / phi});
        }
      }
      return from_coordinates(pts);
    }
    case PlatonicSolid::Icosahedron: {
      std::vector<Point> pts;
      for (double a : {-1.0, 1.0}) {
        for (double b : {-1.0, 1.0}) {
          pts.push_back({0.0, a, b * phi});
          pts.push_back({a, b * phi, 0.0});
          pts.push_back({a * phi, 0.0, b});
        }
      }
      return from_coordinates(pts);
    }
  }
  throw Error(Errc::UnknownSolid, "unknown solid");
}

GraphDocument two_vertex_line(double length, const CMatrix& a, const CMatrix& b, bool external) {
  GraphDocument doc;
  doc.graph.vertices = 2;
  doc.graph.internal_edges = {{0, 1, length}};
  if (external) doc.graph.external_edges = {{0}, {1}};
  doc.graph.lengths_unit = length;
  doc.locals = {LocalSpec::explicit_matrix(a), LocalSpec::explicit_matrix(b)};
  return doc;
}

}  // namespace

Colouring Colouring::from_edge_colours(const Graph& g, std::span<const std::size_t> edge_colour,
                                       std::size_t colours) {
  if (edge_colour.size() != g.internal_count()) {
    throw Error(Errc::InvalidColouring, "one colour per internal edge is required");
  }
  Colouring c;
  c.colours_ = colours;
  c.edge_colour_.assign(edge_colour.begin(), edge_colour.end());
  c.neighbour_.assign(g.vertex_count(), std::vector<std::optional<std::size_t>>(colours));
  for (const auto& e : g.internal_edges()) {
    const std::size_t a = edge_colour[e.id];
    if (e.is_loop()) throw Error(Errc::InvalidColouring, "loops cannot be coloured");
    if (g.multiplicity(e.u, e.v) > 1) {
      throw Error(Errc::InvalidColouring, "parallel edges cannot be coloured");
    }
    if (a >= colours) throw Error(Errc::InvalidColouring, "edge colour out of range");
    if (c.neighbour_[e.u][a] || c.neighbour_[e.v][a]) {
      throw Error(Errc::InvalidColouring, "two edges of colour " + std::to_string(a + 1) +
                                              " meet at a vertex");
    }
    c.neighbour_[e.u][a] = e.v;
    c.neighbour_[e.v][a] = e.u;
  }
  return c;
}

std::optional<std::size_t> Colouring::neighbour(std::size_t vertex, std::size_t colour) const {
  return neighbour_[vertex][colour];
}

bool Colouring::is_regular() const {
  return std::all_of(neighbour_.begin(), neighbour_.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](const auto& n) { return n.has_value(); });
  });
}

ColourMatrices commuting_colour_matrices(const Colouring& c) {
  if (!c.is_regular()) {
    throw Error(Errc::NonRegularColouring, "some vertex lacks an edge of some colour");
  }
  const auto n = static_cast<Eigen::Index>(c.vertex_count());
  ColourMatrices out;
  for (std::size_t a = 0; a < c.colours(); ++a) {
    RMatrix m = RMatrix::Zero(n, n);
    for (std::size_t v = 0; v < c.vertex_count(); ++v) {
      m(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(*c.neighbour(v, a))) = 1.0;
    }
    out.matrices.push_back(std::move(m));
  }
  const RMatrix id = RMatrix::Identity(n, n);
  out.symmetric_involutive = std::all_of(out.matrices.begin(), out.matrices.end(),
                                         [&](const RMatrix& m) {
                                           return m == m.transpose() && m * m == id;
                                         });
  out.all_commute = true;
  for (std::size_t a = 0; a < out.matrices.size(); ++a) {
    for (std::size_t b = a + 1; b < out.matrices.size(); ++b) {
      const auto& x = out.matrices[a];
      const auto& y = out.matrices[b];
      out.all_commute = out.all_commute && x * y == y * x;
    }
  }
  return out;
}

std::string_view solid_name(PlatonicSolid s) {
  switch (s) {
    case PlatonicSolid::Tetrahedron: return "tetrahedron";
    case PlatonicSolid::Cube: return "cube";
    case PlatonicSolid::Octahedron: return "octahedron";
    case PlatonicSolid::Dodecahedron: return "dodecahedron";
    case PlatonicSolid::Icosahedron: return "icosahedron";
  }
  return "unknown";
}

PlatonicSolid parse_solid(std::string_view name) {
  for (auto s : {PlatonicSolid::Tetrahedron, PlatonicSolid::Cube, PlatonicSolid::Octahedron,
                 PlatonicSolid::Dodecahedron, PlatonicSolid::Icosahedron}) {
    if (solid_name(s) == name) return s;
  }
  throw Error(Errc::UnknownSolid, "unknown solid \"" + std::string(name) + "\"");
}

PlatonicFixture platonic(PlatonicSolid solid, double length, const LocalSpec& local) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(Errc::NonPositiveLength, "edge length must be positive");
  }
  EdgeList edges = solid_edges(solid);
  if (edges.colour.empty()) edges.colour = colour_edges(edges, edges.degree);

  PlatonicFixture out;
  out.solid = solid;
  GraphSpec& spec = out.document.graph;
  spec.vertices = edges.vertices;
  for (const auto& e : edges.edges) spec.internal_edges.push_back({e[0], e[1], length});
  for (std::size_t v = 0; v < edges.vertices; ++v) spec.external_edges.push_back({v});
  spec.lengths_unit = length;
  out.document.locals.assign(edges.vertices, local);
  if (!edges.colour.empty()) {
    const Graph g = Graph::build(spec);
    out.colouring = Colouring::from_edge_colours(g, edges.colour, edges.degree);
  }
  return out;
}

CMatrix colour_to_mode_order(const Graph& g, const ModeIndex& index, const Colouring& c,
                             std::size_t vertex, const CMatrix& colour_ordered) {
  const auto slots = index.local_slots(vertex);
  if (colour_ordered.rows() != static_cast<Eigen::Index>(slots.size()) ||
      colour_ordered.cols() != colour_ordered.rows() || g.external_degree(vertex) != 1) {
    throw Error(Errc::SizeMismatch, "colour-ordered local does not fit vertex " +
                                        std::to_string(vertex + 1));
  }
  // Position k in mode order holds colour position `from[k]`.
  std::vector<Eigen::Index> from(slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    from[k] = slots[k].external
                  ? 0
                  : static_cast<Eigen::Index>(c.edge_colour(index.internal(slots[k].slot).edge) + 1);
  }
  const auto n = static_cast<Eigen::Index>(slots.size());
  CMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = colour_ordered(from[i], from[j]);
  }
  return out;
}

GraphDocument platonic_with_colour_local(const PlatonicFixture& fixture,
                                         const CMatrix& colour_ordered) {
  if (!fixture.colouring) {
    throw Error(Errc::FixtureUnknown, "fixture has no colouring");
  }
  const Graph g = Graph::build(fixture.document.graph);
  const ModeIndex index(g);
  GraphDocument doc = fixture.document;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    doc.locals[v] = LocalSpec::explicit_matrix(
        colour_to_mode_order(g, index, *fixture.colouring, v, colour_ordered));
  }
  return doc;
}

TriangleStarPair triangle_and_star_pair(double d12, double d13, double d23,
                                        const std::array<CMatrix, 3>& locals) {
  for (std::size_t v = 0; v < 3; ++v) {
    if (locals[v].rows() != 3 || locals[v].cols() != 3) {
      throw Error(Errc::SizeMismatch, "triangle locals must be 3x3");
    }
    (void)constant_local(v, locals[v]);
  }

  TriangleStarPair out;
  GraphSpec& tri = out.triangle.graph;
  tri.vertices = 3;
  tri.internal_edges = {{0, 1, d12}, {0, 2, d13}, {1, 2, d23}};
  tri.external_edges = {{0}, {1}, {2}};
  for (const auto& s : locals) out.triangle.locals.push_back(LocalSpec::explicit_matrix(s));

  // Star loops: 1 <- edge 12, 2 <- edge 23, 3 <- edge 13.
  GraphSpec& st = out.star.graph;
  st.vertices = 1;
  st.internal_edges = {{0, 0, d12}, {0, 0, d23}, {0, 0, d13}};
  st.external_edges = {{0}, {0}, {0}};

  // Rows/columns of T: externals e1 e2 e3 = 0 1 2, then loop k half h at
  // 3 + 2(k - 1) + h. Each entry copies s_a^{bc}, where labels b, c are
  // vertex numbers (0 for the external edge).
  struct Entry {
    int row, col, a, b, c;
  };
  static constexpr Entry table[] = {
      {0, 0, 1, 0, 0}, {1, 1, 2, 0, 0}, {2, 2, 3, 0, 0},
      {0, 3, 1, 0, 2}, {0, 7, 1, 0, 3}, {1, 4, 2, 0, 1},
      {1, 5, 2, 0, 3}, {2, 6, 3, 0, 2}, {2, 8, 3, 0, 1},
      {3, 0, 1, 2, 0}, {4, 1, 2, 1, 0}, {5, 1, 2, 3, 0},
      {6, 2, 3, 2, 0}, {7, 0, 1, 3, 0}, {8, 2, 3, 1, 0},
      {3, 3, 1, 2, 2}, {4, 4, 2, 1, 1}, {4, 5, 2, 1, 3},
      {3, 7, 1, 2, 3}, {5, 4, 2, 3, 1}, {5, 5, 2, 3, 3},
      {6, 6, 3, 2, 2}, {6, 8, 3, 2, 1}, {7, 3, 1, 3, 2},
      {8, 6, 3, 1, 2}, {7, 7, 1, 3, 3}, {8, 8, 3, 1, 1},
  };
  // Local position of label b at vertex a: external first, then neighbours
  // in ascending order.
  auto local = [](int a, int b) -> Eigen::Index { return b == 0 ? 0 : (b < a ? b : b - 1); };
  CMatrix t = CMatrix::Zero(9, 9);
  for (const auto& e : table) {
    t(e.row, e.col) = locals[static_cast<std::size_t>(e.a - 1)](local(e.a, e.b), local(e.a, e.c));
  }
  out.star.locals = {LocalSpec::explicit_matrix(t)};

  const Graph tg = Graph::build(tri);
  const Graph sg = Graph::build(st);
  const ModeIndex ti(tg);
  const ModeIndex si(sg);
  const std::map<Pair, std::size_t> loop_of{{{0, 1}, 0}, {{1, 2}, 1}, {{0, 2}, 2}};
  out.internal_map.resize(ti.internal_size());
  for (std::size_t s = 0; s < ti.internal_size(); ++s) {
    const auto& slot = ti.internal(s);
    const Pair key{std::min(slot.tail, slot.head), std::max(slot.tail, slot.head)};
    const int half = slot.tail == key[0] ? 0 : 1;
    out.internal_map[s] = si.internal_slot(loop_of.at(key), 0, half);
  }
  return out;
}

GraphDocument line2(double length) {
  CMatrix swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  return two_vertex_line(length, swap, swap, true);
}

GraphDocument interval_compact(double length, double r1, double r2) {
  return two_vertex_line(length, CMatrix::Constant(1, 1, r1), CMatrix::Constant(1, 1, r2), false);
}

GraphDocument tadpole(double length) {
  GraphDocument doc;
  doc.graph.vertices = 1;
  doc.graph.internal_edges = {{0, 0, length}};
  doc.graph.external_edges = {{0}};
  doc.graph.lengths_unit = length;
  doc.locals = {LocalSpec::kirchhoff()};
  return doc;
}

GraphDocument fabry_perot(double r, double length) {
  if (!(std::abs(r) <= 1.0)) {
    throw Error(Errc::InvalidParameter, "fabry_perot needs |r| <= 1");
  }
  const double t = std::sqrt(1.0 - r * r);
  CMatrix s(2, 2);
  s << r, t, t, -r;
  return two_vertex_line(length, s, s, true);
}

GraphDocument star(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidParameter, "a star needs at least one external edge");
  GraphDocument doc;
  doc.graph.vertices = 1;
  doc.graph.external_edges.assign(n, {0});
  doc.locals = {LocalSpec::kirchhoff()};
  return doc;
}

GraphDocument canonical(std::string_view name, const CanonicalParams& p) {
  if (name == "line2") return line2(p.length);
  if (name == "interval_compact") return interval_compact(p.length, p.r1, p.r2);
  if (name == "tadpole") return tadpole(p.length);
  if (name == "fabry_perot") return fabry_perot(p.r, p.length);
  if (name == "star") return star(p.degree);
  throw Error(Errc::UnknownFixture, "unknown fixture \"" + std::string(name) + "\"");
}

}  // namespace qgraph
