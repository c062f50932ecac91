#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "qgraph/error.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/spectral.hpp"

using namespace qgraph;
using std::numbers::pi;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("polynomial helpers") {
  const Coefficients c = {2.0, -3.0, 1.0};  // (z - 1)(z - 2)
  CHECK(evaluate(c, 1.0) == Complex(0.0));
  CHECK(evaluate(c, 3.0) == Complex(2.0));
  CHECK(evaluation_scale(c, 2.0) == doctest::Approx(2.0 + 6.0 + 4.0));
  const Coefficients d = derivative(c);
  REQUIRE(d.size() == 2);
  CHECK(d[0] == Complex(-3.0));
  CHECK(d[1] == Complex(2.0));
  const Coefficients m = multiply(c, Coefficients{1.0, 1.0});
  REQUIRE(m.size() == 4);
  CHECK(m[0] == Complex(2.0));
  CHECK(m[1] == Complex(-1.0));
  CHECK(m[2] == Complex(-2.0));
  CHECK(m[3] == Complex(1.0));

  const auto t = trim(Coefficients{1e-20, 0.0, 3.0, 1.0, 1e-18}, 1e-12);
  CHECK(t.valuation == 2);
  CHECK(t.degree() == 1);
}

TEST_CASE("unit-circle fit recovers coefficients") {
  std::mt19937_64 rng(40);
  std::normal_distribution<double> nd;
  Coefficients c(7);
  for (auto& x : c) x = Complex(nd(rng), nd(rng));
  const std::size_t m = 16;
  std::vector<Complex> samples(m);
  for (std::size_t k = 0; k < m; ++k) samples[k] = evaluate(c, std::polar(1.0, 2.0 * pi * double(k) / double(m)));
  const Coefficients fit = fit_unit_circle(samples);
  REQUIRE(fit.size() == m);
  for (std::size_t k = 0; k < m; ++k) {
    const Complex expect = k < c.size() ? c[k] : Complex(0.0);
    CHECK(std::abs(fit[k] - expect) < 1e-13);
  }
}

TEST_CASE("roots with multiplicity") {
  // (z - 1/2)^3 (z + 2) (z - i)
  Coefficients c = {1.0};
  for (Complex r : {Complex(0.5), Complex(0.5), Complex(0.5), Complex(-2.0), Complex(0.0, 1.0)})
    c = multiply(c, Coefficients{-r, 1.0});
  const auto roots = polynomial_roots(c);
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(roots[0].value - 0.5) < 1e-12);
  CHECK(roots[0].multiplicity == 3);
  CHECK(std::abs(roots[1].value - Complex(0.0, 1.0)) < 1e-12);
  CHECK(roots[1].multiplicity == 1);
  CHECK(std::abs(roots[2].value + 2.0) < 1e-12);
}

TEST_CASE("tadpole secular polynomial") {
  const QuantumGraph qg = realize(tadpole(1.0));
  const SecularPolynomial poly = secular_polynomial(qg);
  // det(E - S22) = (1 - zeta)(zeta - 1/3).
  const Coefficients expect = {-1.0 / 3.0, 4.0 / 3.0, -1.0};
  REQUIRE(poly.coefficients.size() >= 3);
  for (std::size_t k = 0; k < poly.coefficients.size(); ++k) {
    const Complex e = k < expect.size() ? expect[k] : Complex(0.0);
    CHECK(std::abs(poly.coefficients[k] - e) < 1e-13);
  }
  const double p = 0.77;
  CHECK(std::abs(poly.at_momentum(p) - secular_determinant(qg, p)) < 1e-13);

  const auto all = classify_poles(qg, poly);
  REQUIRE(all.size() == 2);
  CHECK(std::abs(all[0].zeta - 1.0 / 3.0) < 1e-12);
  CHECK(all[0].couples);
  CHECK(std::abs(all[1].zeta - 1.0) < 1e-12);
  CHECK_FALSE(all[1].couples);
  const auto poles = scattering_poles(qg, poly);
  REQUIRE(poles.size() == 1);
  CHECK(std::abs(poles[0].momentum - kI * std::log(1.0 / 3.0)) < 1e-12);
}

TEST_CASE("halving the unit doubles the sample count but not the polynomial") {
  std::mt19937_64 rng(41);
  GraphSpec g{2, {{0, 1, 1.0}, {1, 1, 2.0}, {0, 1, 3.0}}, {{0}, {1}}, 1.0};
  const QuantumGraph qg = oracle::random_quantum_graph(rng, g, true);
  const SecularPolynomial a = secular_polynomial(qg, 1.0);
  const SecularPolynomial b = secular_polynomial(qg, 0.5);
  CHECK(b.degree_bound == 2 * a.degree_bound);
  double scale = 0.0;
  for (const auto& c : a.coefficients) scale = std::max(scale, std::abs(c));
  for (std::size_t k = 0; k < b.coefficients.size(); ++k) {
    const Complex expect = (k % 2 == 0 && k / 2 < a.coefficients.size()) ? a.coefficients[k / 2] : 0.0;
    CHECK(std::abs(b.coefficients[k] - expect) < 1e-12 * scale);
  }
}

TEST_CASE("secular polynomial preconditions") {
  const GraphSpec spec{2, {{0, 1, 1.0}, {0, 1, std::sqrt(2.0)}}, {{0}}, {}};
  std::mt19937_64 rng(42);
  const QuantumGraph qg = oracle::random_quantum_graph(rng, spec, true);
  CHECK(error_of([&] { secular_polynomial(qg); }) == Errc::IncommensurableLengths);
  CHECK(error_of([&] { secular_polynomial(qg, 1.0); }) == Errc::IncommensurableLengths);
  CHECK(error_of([&] { edge_multiples(qg.graph(), 0.3); }) == Errc::IncommensurableLengths);

  const Graph g = Graph::build({1, {{0, 0, 1.0}}, {{0}}, 1.0});
  const auto dep = LocalScattering::momentum_dependent(0, 3, [](Complex) { return kirchhoff_matrix(3); });
  const QuantumGraph mq(g, {dep});
  CHECK(error_of([&] { secular_polynomial(mq); }) == Errc::NonConstantLocals);

  SecularPolynomial constant;
  constant.coefficients = {2.0, 0.0};
  CHECK(error_of([&] { find_poles(constant); }) == Errc::DegenerateConstantPolynomial);
}

TEST_CASE("principal momentum has no negative zero") {
  const Complex p = principal_momentum(0.5, 1.0);
  CHECK_FALSE(std::signbit(p.real()));
  CHECK(p.imag() == doctest::Approx(std::log(0.5)));
}

TEST_CASE("interval quantization") {
  const double len = 1.5;
  struct Case {
    double r1, r2, offset;
  };
  for (const Case c : {Case{-1.0, -1.0, 0.0}, Case{1.0, 1.0, 0.0}, Case{-1.0, 1.0, 0.5}}) {
    const QuantumGraph qg = realize(interval_compact(len, c.r1, c.r2));
    const double top = 10.25 * pi / len;
    for (bool poly_route : {false, true}) {
      SpectrumOptions opts;
      if (poly_route) opts.unit = len;
      const auto ps = compact_spectrum(qg, 0.1, top, opts);
      REQUIRE(ps.size() == 10);
      for (std::size_t n = 0; n < ps.size(); ++n) {
        const double expect = (double(n) + 1.0 - c.offset) * pi / len;
        CHECK(ps[n] == doctest::Approx(expect).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("scan and polynomial routes agree on a compact triangle") {
  GraphSpec spec{3, {{0, 1, 1.0}, {1, 2, 2.0}, {0, 2, 3.0}}, {}, 1.0};
  std::vector<LocalScattering> locals;
  for (std::size_t v = 0; v < 3; ++v) locals.push_back(kirchhoff_local(v, 2));
  const QuantumGraph qg(Graph::build(spec), locals);
  const auto scan = compact_spectrum(qg, 0.05, 6.0);
  SpectrumOptions opts;
  opts.unit = 1.0;
  const auto poly = compact_spectrum(qg, 0.05, 6.0, opts);
  REQUIRE(scan.size() == poly.size());
  for (std::size_t i = 0; i < scan.size(); ++i) CHECK(std::abs(scan[i] - poly[i]) < 1e-9);
  // A Kirchhoff cycle of total length 6 has spectrum 2 pi n / 6.
  for (double p : scan) {
    const double n = p * 6.0 / (2.0 * pi);
    CHECK(std::abs(n - std::round(n)) < 1e-9);
  }
}

TEST_CASE("compact spectrum preconditions") {
  const QuantumGraph compact = realize(interval_compact(1.0, -1.0, -1.0));
  CHECK(error_of([&] { compact_spectrum(compact, 2.0, 1.0); }) == Errc::EmptyInterval);
  CHECK(error_of([&] { compact_spectrum(realize(tadpole(1.0)), 0.0, 5.0); }) == Errc::NotCompact);
}
