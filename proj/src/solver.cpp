#include "qgraph/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

constexpr std::size_t kMaxSeriesOrder = 200000;

std::string format_momentum(Complex p) {
  std::ostringstream os;
  os.precision(17);
  os << p.real();
  if (p.imag() != 0.0) os << (p.imag() < 0 ? " - " : " + ") << std::abs(p.imag()) << "i";
  return os.str();
}

// Factorises E - S22 after the conditioning probe.
LuDecomposition checked_factor(const CMatrix& m, Complex p, double threshold,
                               SingularValueRange* range_out) {
  const SingularValueRange range = singular_value_range(m);
  if (range_out) *range_out = range;
  if (range.ratio() <= threshold) {
    std::ostringstream os;
    os << "E(p) - S22(p) is numerically singular at p = " << format_momentum(p)
       << " (sigma_min/sigma_max = " << range.ratio() << ")";
    throw Error(Errc::NearPole, os.str());
  }
  LuDecomposition lu(m);
  if (lu.singular()) {
    throw Error(Errc::NearPole, "E(p) - S22(p) is singular at p = " + format_momentum(p));
  }
  return lu;
}

CMatrix series_operator(const QuantumGraph& qg, Complex p, BlockSystem* blocks, CMatrix* e_minus) {
  *blocks = assemble_blocks(qg, p);
  *e_minus = assemble_propagation(qg.graph(), qg.index(), -p).matrix;
  return *e_minus * blocks->s22;
}

}  // namespace

TotalSMatrix total_scattering(const BlockSystem& blocks, const CMatrix& propagation,
                              double threshold) {
  TotalSMatrix out;
  out.momentum = blocks.momentum;
  if (blocks.s22.rows() == 0) {
    out.matrix = blocks.s11;
    out.condition.empty = true;
    return out;
  }
  const CMatrix m = propagation - blocks.s22;
  const LuDecomposition lu = checked_factor(m, blocks.momentum, threshold, &out.condition);
  out.matrix = blocks.s11 + blocks.s12 * lu.solve(blocks.s21);
  return out;
}

TotalSMatrix total_scattering(const QuantumGraph& qg, Complex p, double threshold) {
  const BlockSystem blocks = assemble_blocks(qg, p);
  const CMatrix e = assemble_propagation(qg.graph(), qg.index(), p).matrix;
  return total_scattering(blocks, e, threshold);
}

CVector internal_modes(const QuantumGraph& qg, Complex p, const CVector& external,
                       double threshold) {
  if (external.size() != static_cast<Eigen::Index>(qg.index().external_size())) {
    throw Error(Errc::SizeMismatch, "external amplitude vector has the wrong length");
  }
  const BlockSystem blocks = assemble_blocks(qg, -p);
  if (blocks.s22.rows() == 0) return CVector();
  const CMatrix e = assemble_propagation(qg.graph(), qg.index(), -p).matrix;
  const LuDecomposition lu = checked_factor(e - blocks.s22, -p, threshold, nullptr);
  return lu.solve(CVector(blocks.s21 * external));
}

double mode_residual(const QuantumGraph& qg, Complex p, const CVector& a_plus) {
  const CVector a_minus = total_scattering(qg, -p).matrix * a_plus;
  const CVector b_plus = internal_modes(qg, p, a_plus);
  const CVector b_minus = internal_modes(qg, -p, a_minus);

  const BlockSystem blocks = assemble_blocks(qg, p);
  const CMatrix e = assemble_propagation(qg.graph(), qg.index(), p).matrix;

  double worst = max_abs(CVector(a_plus - blocks.s11 * a_minus - blocks.s12 * b_minus));
  if (b_plus.size() > 0) {
    worst = std::max(worst, max_abs(CVector(b_plus - blocks.s21 * a_minus - blocks.s22 * b_minus)));
    worst = std::max(worst, max_abs(CVector(b_plus - e * b_minus)));
  }
  return worst;
}

CMatrix path_sum_oracle(const QuantumGraph& qg, Complex p, std::size_t max_order) {
  BlockSystem blocks;
  CMatrix e_minus;
  const CMatrix step = series_operator(qg, p, &blocks, &e_minus);
  if (step.rows() == 0) return blocks.s11;
  if (spectral_radius(step) >= 1.0) {
    throw Error(Errc::SeriesDiverges, "multiple-scattering series diverges at p = " +
                                          format_momentum(p));
  }
  // term_n = [E(-p) S22]^n E(-p) S21
  CMatrix term = e_minus * blocks.s21;
  CMatrix sum = term;
  for (std::size_t n = 1; n <= max_order; ++n) {
    term = step * term;
    sum += term;
  }
  return blocks.s11 + blocks.s12 * sum;
}

std::size_t path_sum_order(const QuantumGraph& qg, Complex p, double tol) {
  BlockSystem blocks;
  CMatrix e_minus;
  const CMatrix step = series_operator(qg, p, &blocks, &e_minus);
  if (step.rows() == 0) return 0;
  const double rho = spectral_radius(step);
  if (rho >= 1.0) {
    throw Error(Errc::SeriesDiverges, "multiple-scattering series diverges at p = " +
                                          format_momentum(p));
  }
  const double norm = singular_value_range(step).max;
  const double q = norm < 1.0 ? norm : rho;
  if (q == 0.0) return 0;
  // q^(K+1) / (1 - q) < tol  <=>  K + 1 > log(tol (1 - q)) / log q
  const double bound = std::log(tol * (1.0 - q)) / std::log(q);
  if (!(bound < static_cast<double>(kMaxSeriesOrder))) {
    throw Error(Errc::SeriesDiverges, "multiple-scattering series converges too slowly at p = " +
                                          format_momentum(p));
  }
  return static_cast<std::size_t>(std::max(0.0, std::floor(bound)));
}

double oracle_imaginary_offset(const Graph& g) {
  const double d = g.min_length();
  return d > 0.0 ? 0.2 / d : 0.2;
}

double involution_defect(const QuantumGraph& qg, Complex p) {
  const CMatrix plus = total_scattering(qg, p).matrix;
  const CMatrix minus = total_scattering(qg, -p).matrix;
  const auto n = plus.rows();
  return max_abs(CMatrix(plus * minus - CMatrix::Identity(n, n)));
}

double unitarity_defect(const QuantumGraph& qg, double p) {
  const CMatrix s = total_scattering(qg, Complex(p)).matrix;
  const auto n = s.rows();
  return max_abs(CMatrix(s.adjoint() * s - CMatrix::Identity(n, n)));
}

}  // namespace qgraph
