#include <doctest.h>

#include "qgraph/error.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/solver.hpp"

using namespace qgraph;

namespace {

Errc error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::SizeMismatch;
}

}  // namespace

TEST_CASE("parse a full document") {
  const auto doc = parse_graph_document(R"({
    "vertices": 2,
    "internal_edges": [{"u": 1, "v": 2, "length": 1.5}],
    "external_edges": [{"vertex": 1}, {"vertex": 2}],
    "lengths_unit": "1/2",
    "locals": [{"family": "kirchhoff"}, {"matrix": [[[0, 0], [1, 0]], [1, 0]]}]
  })");
  CHECK(doc.graph.vertices == 2);
  REQUIRE(doc.graph.internal_edges.size() == 1);
  CHECK(doc.graph.internal_edges[0].u == 0);
  CHECK(doc.graph.internal_edges[0].v == 1);
  CHECK(doc.graph.lengths_unit.value() == doctest::Approx(0.5));
  REQUIRE(doc.locals.size() == 2);
  CHECK(doc.locals[1].kind == LocalSpec::Kind::Matrix);
  CHECK(doc.locals[1].matrix(0, 1) == Complex(1.0));
  const QuantumGraph qg = realize(doc);
  CHECK(qg.graph().degree(0) == 2);
}

TEST_CASE("parse errors") {
  auto parse = [](const char* text) { return [text] { parse_graph_document(text); }; };
  CHECK(error_of(parse("{")) == Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": 1, "colour": 2})")) == Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": "one"})")) == Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": 1, "internal_edges": [{"u": 1, "v": 1}]})")) ==
        Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": 1, "locals": [{"family": "dirac"}]})")) ==
        Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": 1, "lengths_unit": "1/0"})")) == Errc::ParseError);
  CHECK(error_of(parse(R"({"vertices": 1, "external_edges": [{"vertex": 1, "x": 0}]})")) ==
        Errc::ParseError);
}

TEST_CASE("realize validates ranges and locals") {
  auto realize_text = [](const char* text) {
    return [text] { realize(parse_graph_document(text)); };
  };
  CHECK(error_of(realize_text(R"({"vertices": 1, "external_edges": [{"vertex": 0}]})")) ==
        Errc::DanglingVertexReference);
  CHECK(error_of(realize_text(
            R"({"vertices": 2, "internal_edges": [{"u": 1, "v": 2, "length": 1}],
                "external_edges": [{"vertex": 1}], "locals": [{"family": "kirchhoff"}]})")) ==
        Errc::MissingVertexMatrix);
  CHECK(error_of(realize_text(
            R"({"vertices": 1, "external_edges": [{"vertex": 1}],
                "locals": [{"family": "kirchhoff"}, {"family": "kirchhoff"}]})")) ==
        Errc::SizeMismatch);
  CHECK(error_of(realize_text(
            R"({"vertices": 1, "external_edges": [{"vertex": 1}, {"vertex": 1}],
                "locals": [{"matrix": [[1, 0], [0, 2]]}]})")) == Errc::NotInvolutive);
  CHECK(error_of(realize_text(
            R"({"vertices": 1, "external_edges": [{"vertex": 1}, {"vertex": 1}],
                "locals": [{"matrix": [[1]]}]})")) == Errc::SizeMismatch);
  CHECK(error_of(realize_text(
            R"({"vertices": 1, "external_edges": [{"vertex": 1}],
                "locals": [{"family": "tetra2"}]})")) == Errc::DegreeMismatch);
}

TEST_CASE("json round trip preserves the graph and its scattering") {
  const char* text = R"({
    "vertices": 2,
    "internal_edges": [{"u": 1, "v": 2, "length": 1.25}, {"u": 2, "v": 2, "length": 0.5}],
    "external_edges": [{"vertex": 2}, {"vertex": 1}],
    "lengths_unit": 0.25,
    "locals": [{"matrix": [[0, 1], [1, 0]]}, {"family": "kirchhoff"}]
  })";
  const GraphDocument a = parse_graph_document(text);
  const std::string dumped = to_json(a);
  const GraphDocument b = parse_graph_document(dumped);
  CHECK(to_json(b) == dumped);
  const CMatrix sa = total_scattering(realize(a), 1.7).matrix;
  const CMatrix sb = total_scattering(realize(b), 1.7).matrix;
  CHECK(max_abs(CMatrix(sa - sb)) == 0.0);
}

TEST_CASE("missing file is a parse error") {
  CHECK(error_of([] { load_graph_document("/nonexistent/graph.json"); }) == Errc::ParseError);
}
