#include "qgraph/assembler.hpp"

#include <cmath>

namespace qgraph {

CMatrix BlockSystem::combined() const {
  const auto ne = s11.rows();
  const auto ni = s22.rows();
  CMatrix out(ne + ni, ne + ni);
  out.topLeftCorner(ne, ne) = s11;
  out.topRightCorner(ne, ni) = s12;
  out.bottomLeftCorner(ni, ne) = s21;
  out.bottomRightCorner(ni, ni) = s22;
  return out;
}

BlockSystem scatter_blocks(const ModeIndex& index, std::span<const CMatrix> local_matrices,
                           Complex momentum) {
  const auto ne = static_cast<Eigen::Index>(index.external_size());
  const auto ni = static_cast<Eigen::Index>(index.internal_size());
  BlockSystem b;
  b.momentum = momentum;
  b.s11 = CMatrix::Zero(ne, ne);
  b.s12 = CMatrix::Zero(ne, ni);
  b.s21 = CMatrix::Zero(ni, ne);
  b.s22 = CMatrix::Zero(ni, ni);

  for (std::size_t v = 0; v < local_matrices.size(); ++v) {
    const CMatrix& s = local_matrices[v];
    const auto slots = index.local_slots(v);
    for (std::size_t r = 0; r < slots.size(); ++r) {
      const auto row = static_cast<Eigen::Index>(slots[r].slot);
      for (std::size_t c = 0; c < slots.size(); ++c) {
        const auto col = static_cast<Eigen::Index>(slots[c].slot);
        const Complex value = s(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
        if (slots[r].external) {
          (slots[c].external ? b.s11 : b.s12)(row, col) = value;
        } else {
          (slots[c].external ? b.s21 : b.s22)(row, col) = value;
        }
      }
    }
  }
  return b;
}

BlockSystem assemble_blocks(const QuantumGraph& qg, Complex p) {
  std::vector<CMatrix> locals;
  locals.reserve(qg.locals().size());
  for (const auto& s : qg.locals()) locals.push_back(s.at(p));
  return scatter_blocks(qg.index(), locals, p);
}

std::vector<std::size_t> block_ordering(const ModeIndex& index) {
  std::vector<std::size_t> order;
  order.reserve(index.external_size() + index.internal_size());
  for (std::size_t v = 0; v < index.vertex_count(); ++v) {
    for (const auto& s : index.local_slots(v)) {
      order.push_back(s.external ? s.slot : index.external_size() + s.slot);
    }
  }
  return order;
}

CMatrix direct_sum(std::span<const CMatrix> local_matrices) {
  Eigen::Index n = 0;
  for (const auto& m : local_matrices) n += m.rows();
  CMatrix out = CMatrix::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& m : local_matrices) {
    out.block(at, at, m.rows(), m.cols()) = m;
    at += m.rows();
  }
  return out;
}

std::vector<Complex> edge_phases(const Graph& g, Complex p) {
  std::vector<Complex> out;
  out.reserve(g.internal_count());
  for (const auto& e : g.internal_edges()) out.push_back(std::exp(-kI * p * e.length));
  return out;
}

CMatrix propagation_from_edge_factors(const ModeIndex& index,
                                      std::span<const Complex> edge_factor) {
  const auto ni = static_cast<Eigen::Index>(index.internal_size());
  CMatrix e = CMatrix::Zero(ni, ni);
  for (std::size_t s = 0; s < index.internal_size(); ++s) {
    const auto& slot = index.internal(s);
    e(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(slot.partner)) =
        edge_factor[slot.edge];
  }
  return e;
}

PropagationMatrix assemble_propagation(const Graph& g, const ModeIndex& index, Complex p) {
  const auto phases = edge_phases(g, p);
  return {propagation_from_edge_factors(index, phases), p};
}

}  // namespace qgraph
