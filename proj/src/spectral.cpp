#include "qgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qgraph/assembler.hpp"
#include "qgraph/error.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/solver.hpp"

namespace qgraph {

namespace {

constexpr std::size_t kHeldOutPoints = 8;
constexpr double kFitTolerance = 1e-9;
constexpr std::size_t kContourPoints = 32;
constexpr double kContourRadius = 1e-3;
constexpr double kPrincipalPartTolerance = 1e-6;
constexpr int kPolishSteps = 5;

std::vector<CMatrix> constant_matrices(const QuantumGraph& qg) {
  if (!qg.constant_locals()) {
    throw Error(Errc::NonConstantLocals, "the secular polynomial needs constant local matrices");
  }
  std::vector<CMatrix> out;
  for (const auto& s : qg.locals()) out.push_back(s.matrix());
  return out;
}

Complex determinant_at(const ModeIndex& index, const CMatrix& s22,
                       const std::vector<Complex>& factors) {
  return determinant(CMatrix(propagation_from_edge_factors(index, factors) - s22));
}

std::vector<Complex> zeta_powers(const std::vector<std::size_t>& multiples, Complex zeta) {
  std::vector<Complex> out(multiples.size());
  for (std::size_t e = 0; e < multiples.size(); ++e) {
    out[e] = std::pow(zeta, static_cast<int>(multiples[e]));
  }
  return out;
}

// Golden-section minimum of g on [a, b].
template <class F>
double golden_minimum(F&& g, double a, double b, double width) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double gc = g(c);
  double gd = g(d);
  while (b - a > width) {
    if (gc <= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return gc <= gd ? c : d;
}

}  // namespace

Complex secular_determinant(const QuantumGraph& qg, Complex p) {
  if (qg.graph().internal_count() == 0) return 1.0;
  const BlockSystem blocks = assemble_blocks(qg, p);
  const CMatrix e = assemble_propagation(qg.graph(), qg.index(), p).matrix;
  return determinant(CMatrix(e - blocks.s22));
}

Complex SecularPolynomial::at_momentum(Complex p) const {
  return at_zeta(std::exp(-kI * p * unit));
}

std::vector<std::size_t> edge_multiples(const Graph& g, double unit) {
  if (!(unit > 0.0) || !std::isfinite(unit)) {
    throw Error(Errc::IncommensurableLengths, "the length unit must be positive");
  }
  std::vector<std::size_t> out;
  for (const auto& e : g.internal_edges()) {
    const double ratio = e.length / unit;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio)) {
      throw Error(Errc::IncommensurableLengths,
                  "edge " + std::to_string(e.id + 1) + " has length " + std::to_string(e.length) +
                      ", not a multiple of " + std::to_string(unit));
    }
    out.push_back(static_cast<std::size_t>(n));
  }
  return out;
}

SecularPolynomial secular_polynomial(const QuantumGraph& qg, std::optional<double> unit) {
  const std::vector<CMatrix> locals = constant_matrices(qg);
  if (!unit) unit = qg.graph().lengths_unit();
  if (!unit) {
    throw Error(Errc::IncommensurableLengths, "no length unit declared for the secular polynomial");
  }

  SecularPolynomial poly;
  poly.unit = *unit;
  poly.edge_multiples = edge_multiples(qg.graph(), *unit);
  if (qg.graph().internal_count() == 0) {
    poly.coefficients = {Complex(1.0)};
    return poly;
  }
  for (std::size_t m : poly.edge_multiples) poly.degree_bound += 2 * m;

  const ModeIndex& index = qg.index();
  const CMatrix s22 = scatter_blocks(index, locals).s22;
  poly.s22 = s22;
  for (const auto& slot : index.internal_slots()) {
    poly.slot_partner.push_back(slot.partner);
    poly.slot_multiple.push_back(poly.edge_multiples[slot.edge]);
  }
  const std::size_t d = poly.degree_bound;
  const std::size_t samples = 2 * (d + 1);

  std::vector<Complex> values(samples);
  std::vector<Complex> factors(poly.edge_multiples.size());
  for (std::size_t k = 0; k < samples; ++k) {
    // zeta_k^m taken directly from the exact angle index (k m mod M).
    for (std::size_t e = 0; e < factors.size(); ++e) {
      const std::size_t turn = (k * poly.edge_multiples[e]) % samples;
      factors[e] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(turn) /
                                       static_cast<double>(samples));
    }
    values[k] = determinant_at(index, s22, factors);
  }
  Coefficients fitted = fit_unit_circle(values);
  fitted.resize(d + 1);
  poly.coefficients = std::move(fitted);

  double largest = 0.0;
  for (const auto& c : poly.coefficients) largest = std::max(largest, std::abs(c));
  for (std::size_t j = 0; j < kHeldOutPoints; ++j) {
    const double angle = 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.37) /
                         static_cast<double>(kHeldOutPoints);
    const Complex zeta = std::polar(1.0, angle);
    const Complex direct = determinant_at(index, s22, zeta_powers(poly.edge_multiples, zeta));
    const double residual = std::abs(poly.at_zeta(zeta) - direct);
    if (!(residual < kFitTolerance * largest)) {
      throw Error(Errc::FitResidualTooLarge,
                  "secular polynomial misses the determinant by " + std::to_string(residual) +
                      " at a held-out point");
    }
  }
  return poly;
}

CMatrix SecularPolynomial::secular_matrix(Complex zeta) const {
  CMatrix m = -s22;
  for (std::size_t s = 0; s < slot_partner.size(); ++s) {
    m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(slot_partner[s])) +=
        std::pow(zeta, static_cast<int>(slot_multiple[s]));
  }
  return m;
}

std::vector<PolynomialRoot> find_poles(const SecularPolynomial& poly) {
  const TrimmedPolynomial t = trim(poly.coefficients, kTrimTolerance);
  if (t.coefficients.size() <= 1) {
    throw Error(Errc::DegenerateConstantPolynomial,
                "the secular polynomial is a monomial and has no nonzero roots");
  }
  std::vector<PolynomialRoot> roots = polynomial_roots(t.coefficients);
  if (poly.s22.rows() == 0) return roots;

  const auto n = poly.s22.rows();
  for (auto& r : roots) {
    Complex z = r.value;
    for (int step = 0; step < kPolishSteps; ++step) {
      const LuDecomposition lu(poly.secular_matrix(z));
      if (lu.singular()) break;
      // dM/dzeta has m zeta^(m-1) at (s, partner(s)); tr(M^-1 dM) picks the
      // (partner(s), s) entries of M^-1.
      CMatrix derivative_m = CMatrix::Zero(n, n);
      for (std::size_t s = 0; s < poly.slot_partner.size(); ++s) {
        const auto k = static_cast<int>(poly.slot_multiple[s]);
        derivative_m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(poly.slot_partner[s])) =
            static_cast<double>(k) * std::pow(z, k - 1);
      }
      const Complex trace = lu.solve(derivative_m).trace();
      if (trace == Complex(0.0)) break;
      const Complex next = z - static_cast<double>(r.multiplicity) / trace;
      // Stay inside the basin the companion step found.
      if (!(std::abs(next - r.value) < 1e-3 * std::max(1.0, std::abs(r.value)))) break;
      const bool done = std::abs(next - z) <= 4e-16 * std::abs(z);
      z = next;
      if (done) break;
    }
    r.value = z;
  }
  return roots;
}

Complex principal_momentum(Complex zeta, double unit) {
  // + 0.0 turns a signed zero from i * Log into +0.
  return kI * std::log(zeta) / unit + Complex(0.0, 0.0);
}

CMatrix total_scattering_at_zeta(const QuantumGraph& qg, const SecularPolynomial& poly,
                                 Complex zeta) {
  const std::vector<CMatrix> locals = constant_matrices(qg);
  const BlockSystem blocks = scatter_blocks(qg.index(), locals, principal_momentum(zeta, poly.unit));
  const CMatrix e = propagation_from_edge_factors(qg.index(), zeta_powers(poly.edge_multiples, zeta));
  return total_scattering(blocks, e, 0.0).matrix;
}

std::vector<Pole> classify_poles(const QuantumGraph& qg, const SecularPolynomial& poly) {
  const std::vector<PolynomialRoot> roots = find_poles(poly);
  std::vector<Pole> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Complex z0 = roots[i].value;
    Pole pole{z0, principal_momentum(z0, poly.unit), roots[i].multiplicity, true};
    if (!qg.graph().is_compact()) {
      double gap = std::abs(z0);
      for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j != i) gap = std::min(gap, std::abs(roots[j].value - z0));
      }
      const double h = std::min(kContourRadius, 0.3 * gap);

      // Laurent coefficients a_{-k} = (1 / 2 pi i) oint S (z - z0)^(k-1) dz by
      // the trapezoid rule on |z - z0| = h.
      std::vector<CMatrix> principal(roots[i].multiplicity);
      double largest = 0.0;
      for (std::size_t j = 0; j < kContourPoints; ++j) {
        const Complex w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                              static_cast<double>(kContourPoints));
        const CMatrix s = total_scattering_at_zeta(qg, poly, z0 + h * w);
        largest = std::max(largest, max_abs(s));
        Complex weight = 1.0;
        for (std::size_t k = 0; k < principal.size(); ++k) {
          weight *= h * w;
          if (j == 0) principal[k] = CMatrix::Zero(s.rows(), s.cols());
          principal[k] += s * weight;
        }
      }
      double ratio = 0.0;
      for (std::size_t k = 0; k < principal.size(); ++k) {
        const double size = max_abs(principal[k]) / static_cast<double>(kContourPoints) /
                            std::pow(h, static_cast<double>(k + 1));
        ratio = std::max(ratio, largest > 0.0 ? size / largest : 0.0);
      }
      pole.couples = ratio > kPrincipalPartTolerance;
    }
    out.push_back(pole);
  }
  return out;
}

std::vector<Pole> scattering_poles(const QuantumGraph& qg, const SecularPolynomial& poly) {
  std::vector<Pole> all = classify_poles(qg, poly);
  std::erase_if(all, [](const Pole& p) { return !p.couples; });
  return all;
}

std::vector<double> compact_spectrum(const QuantumGraph& qg, double p_min, double p_max,
                                     const SpectrumOptions& options) {
  if (!(p_min < p_max)) throw Error(Errc::EmptyInterval, "spectrum interval is empty");
  if (!qg.graph().is_compact()) {
    throw Error(Errc::NotCompact, "the spectrum is defined for graphs without external edges");
  }
  if (qg.graph().internal_count() == 0) return {};

  const double edge_tol = options.tolerance * std::max(1.0, std::abs(p_max));
  auto inside = [&](double p) {
    return p > p_min + options.tolerance * std::max(1.0, std::abs(p_min)) && p <= p_max + edge_tol;
  };
  std::vector<double> found;

  if (options.unit) {
    const SecularPolynomial poly = secular_polynomial(qg, options.unit);
    std::vector<PolynomialRoot> roots;
    try {
      roots = find_poles(poly);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateConstantPolynomial) throw;
    }
    const double period = 2.0 * std::numbers::pi / poly.unit;
    for (const auto& r : roots) {
      if (std::abs(std::abs(r.value) - 1.0) > 1e-8) continue;
      const double p0 = -std::arg(r.value) / poly.unit;
      for (double n = std::ceil((p_min - p0) / period) - 1.0;; n += 1.0) {
        const double p = p0 + n * period;
        if (p > p_max + edge_tol) break;
        if (inside(p)) found.push_back(p);
      }
    }
  } else {
    auto f = [&](double p) { return secular_determinant(qg, p); };
    auto g = [&](double p) { return std::abs(f(p)); };
    const double step = std::numbers::pi / (8.0 * qg.graph().total_length());
    std::vector<double> grid;
    for (double x = p_min - step; x < p_max + 2.0 * step; x += step) grid.push_back(x);
    std::vector<double> values(grid.size());
    double largest = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      values[i] = g(grid[i]);
      largest = std::max(largest, values[i]);
    }
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      if (!(values[i] < values[i - 1] && values[i] <= values[i + 1])) continue;
      const double lo = grid[i - 1];
      const double hi = grid[i + 1];
      const double scale = std::max(1.0, std::abs(grid[i]));
      double x = golden_minimum(g, lo, hi, 1e-14 * scale);
      for (int it = 0; it < 20; ++it) {
        const double h = 1e-7 * scale;
        const Complex slope = (f(x + h) - f(x - h)) / (2.0 * h);
        if (slope == Complex(0.0)) break;
        const double next = x - (f(x) / slope).real();
        if (!(next > lo && next < hi) || !(g(next) <= g(x))) break;
        const double moved = std::abs(next - x);
        x = next;
        if (moved < options.tolerance * 1e-2 * scale) break;
      }
      if (g(x) <= 1e-8 * largest && inside(x)) found.push_back(x);
    }
  }

  std::sort(found.begin(), found.end());
  std::vector<double> unique;
  for (double p : found) {
    if (unique.empty() || p - unique.back() > 10.0 * options.tolerance * std::max(1.0, std::abs(p))) {
      unique.push_back(p);
    }
  }
  return unique;
}

}  // namespace qgraph
