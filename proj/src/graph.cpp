#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

Graph Graph::build(GraphSpec spec) {
  const std::size_t n = spec.vertices;
  if (n == 0) throw Error(Errc::SizeMismatch, "a graph needs at least one vertex");

  Graph g;
  g.ext_degree_.assign(n, 0);
  g.int_degree_.assign(n, 0);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t id = 0; id < spec.internal_edges.size(); ++id) {
    const auto& e = spec.internal_edges[id];
    if (e.u >= n || e.v >= n) {
      throw Error(Errc::DanglingVertexReference,
                  "internal edge " + std::to_string(id + 1) + " references a missing vertex");
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw Error(Errc::NonPositiveLength,
                  "internal edge " + std::to_string(id + 1) + " has length " +
                      std::to_string(e.length));
    }
    const auto key = std::minmax(e.u, e.v);
    const std::size_t j = seen[{key.first, key.second}]++;
    g.internal_.push_back({id, e.u, e.v, e.length, j});
    g.int_degree_[e.u] += 1;
    g.int_degree_[e.v] += 1;
  }
  for (std::size_t id = 0; id < spec.external_edges.size(); ++id) {
    const auto& e = spec.external_edges[id];
    if (e.vertex >= n) {
      throw Error(Errc::DanglingVertexReference,
                  "external edge " + std::to_string(id + 1) + " references a missing vertex");
    }
    g.external_.push_back({id, e.vertex});
    g.ext_degree_[e.vertex] += 1;
  }
  if (spec.lengths_unit && !(*spec.lengths_unit > 0.0)) {
    throw Error(Errc::NonPositiveLength, "lengths_unit must be positive");
  }

  DisjointSets sets(n);
  for (const auto& e : g.internal_) sets.unite(e.u, e.v);
  const std::size_t root = sets.find(0);
  for (std::size_t v = 1; v < n; ++v) {
    if (sets.find(v) != root) {
      throw Error(Errc::DisconnectedGraph,
                  "vertex " + std::to_string(v + 1) + " is not connected to vertex 1");
    }
  }

  g.spec_ = std::move(spec);
  return g;
}

std::size_t Graph::multiplicity(std::size_t a, std::size_t b) const {
  return static_cast<std::size_t>(std::count_if(internal_.begin(), internal_.end(), [&](const auto& e) {
    return (e.u == a && e.v == b) || (e.u == b && e.v == a);
  }));
}

double Graph::total_length() const {
  double total = 0.0;
  for (const auto& e : internal_) total += e.length;
  return total;
}

double Graph::min_length() const {
  if (internal_.empty()) return 0.0;
  double m = internal_.front().length;
  for (const auto& e : internal_) m = std::min(m, e.length);
  return m;
}

ModeIndex::ModeIndex(const Graph& graph) {
  const auto& ext = graph.external_edges();
  std::vector<std::size_t> order(ext.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ext[a].vertex < ext[b].vertex; });
  external_edge_at_ = order;
  external_slot_of_.assign(ext.size(), 0);
  for (std::size_t s = 0; s < order.size(); ++s) external_slot_of_[order[s]] = s;

  for (const auto& e : graph.internal_edges()) {
    if (e.is_loop()) {
      internal_.push_back({e.u, e.u, e.id, e.multiplicity_index, 0, 0});
      internal_.push_back({e.u, e.u, e.id, e.multiplicity_index, 1, 0});
    } else {
      internal_.push_back({e.u, e.v, e.id, e.multiplicity_index, 0, 0});
      internal_.push_back({e.v, e.u, e.id, e.multiplicity_index, 0, 0});
    }
  }
  std::sort(internal_.begin(), internal_.end(), [](const InternalSlot& a, const InternalSlot& b) {
    return std::tie(a.tail, a.head, a.multiplicity_index, a.half) <
           std::tie(b.tail, b.head, b.multiplicity_index, b.half);
  });

  std::vector<std::vector<std::size_t>> by_edge(graph.internal_count());
  for (std::size_t s = 0; s < internal_.size(); ++s) by_edge[internal_[s].edge].push_back(s);
  for (const auto& slots : by_edge) {
    internal_[slots[0]].partner = slots[1];
    internal_[slots[1]].partner = slots[0];
  }

  local_.resize(graph.vertex_count());
  for (std::size_t s = 0; s < external_edge_at_.size(); ++s) {
    local_[ext[external_edge_at_[s]].vertex].push_back({true, s});
  }
  for (std::size_t s = 0; s < internal_.size(); ++s) local_[internal_[s].tail].push_back({false, s});
}

std::size_t ModeIndex::internal_slot(std::size_t edge, std::size_t tail, int half) const {
  for (std::size_t s = 0; s < internal_.size(); ++s) {
    const auto& slot = internal_[s];
    if (slot.edge == edge && slot.tail == tail && slot.half == half) return s;
  }
  throw Error(Errc::SizeMismatch, "no internal slot for edge " + std::to_string(edge + 1) +
                                      " leaving vertex " + std::to_string(tail + 1));
}

bool operator==(const ModeIndex& a, const ModeIndex& b) {
  auto same_slot = [](const InternalSlot& x, const InternalSlot& y) {
    return std::tie(x.tail, x.head, x.edge, x.multiplicity_index, x.half, x.partner) ==
           std::tie(y.tail, y.head, y.edge, y.multiplicity_index, y.half, y.partner);
  };
  return a.external_slot_of_ == b.external_slot_of_ &&
         a.external_edge_at_ == b.external_edge_at_ && a.local_ == b.local_ &&
         std::equal(a.internal_.begin(), a.internal_.end(), b.internal_.begin(),
                    b.internal_.end(), same_slot);
}

RMatrix permutation_matrix(std::span<const std::size_t> perm) {
  const std::size_t n = perm.size();
  std::vector<bool> hit(n, false);
  RMatrix p = RMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (perm[i] >= n || hit[perm[i]]) {
      throw Error(Errc::SizeMismatch, "not a permutation of 0.." + std::to_string(n - 1));
    }
    hit[perm[i]] = true;
    p(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return p;
}

RMatrix external_permutation(const Graph& graph, std::span<const std::size_t> perm) {
  if (perm.size() != graph.external_count()) {
    throw Error(Errc::SizeMismatch, "external permutation has size " +
                                        std::to_string(perm.size()) + ", expected " +
                                        std::to_string(graph.external_count()));
  }
  return permutation_matrix(perm);
}

RMatrix internal_permutation(const Graph& graph, std::span<const std::size_t> perm) {
  if (perm.size() != 2 * graph.internal_count()) {
    throw Error(Errc::SizeMismatch, "internal permutation has size " +
                                        std::to_string(perm.size()) + ", expected " +
                                        std::to_string(2 * graph.internal_count()));
  }
  return permutation_matrix(perm);
}

}  // namespace qgraph
