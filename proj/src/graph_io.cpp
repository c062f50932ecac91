#include "qgraph/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::ParseError, what); }

void only_fields(const json& obj, std::initializer_list<std::string_view> allowed,
                 const std::string& where) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) fail("unknown field \"" + key + "\" in " + where);
  }
}

const json& required(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing field \"" + std::string(key) + "\" in " + where);
  return *it;
}

// 1-based label to 0-based index. Zero maps past every vertex so that the
// graph builder reports it as a dangling reference.
std::size_t vertex_label(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + " must be an integer vertex label");
  const auto label = v.get<long long>();
  if (label < 0) fail(where + " must be a positive vertex label");
  if (label == 0) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(label - 1);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

double parse_unit(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string()) fail("lengths_unit must be a number or a \"p/q\" string");
  const std::string s = v.get<std::string>();
  const auto slash = s.find('/');
  auto whole = [&](std::string_view part) {
    long long out = 0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, out);
    if (ec != std::errc() || ptr != end || part.empty()) fail("bad lengths_unit \"" + s + "\"");
    return out;
  };
  if (slash == std::string::npos) return static_cast<double>(whole(s));
  const long long p = whole(std::string_view(s).substr(0, slash));
  const long long q = whole(std::string_view(s).substr(slash + 1));
  if (q == 0) fail("lengths_unit has a zero denominator");
  return static_cast<double>(p) / static_cast<double>(q);
}

Complex parse_entry(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  fail(where + " must be a number or an [re, im] pair");
}

LocalSpec parse_local(const json& v, std::size_t vertex) {
  const std::string where = "locals[" + std::to_string(vertex + 1) + "]";
  only_fields(v, {"family", "matrix"}, where);
  const bool has_family = v.contains("family");
  const bool has_matrix = v.contains("matrix");
  if (has_family == has_matrix) fail(where + " needs exactly one of \"family\" or \"matrix\"");
  if (has_family) {
    const auto& f = v["family"];
    if (f == "kirchhoff") return LocalSpec::kirchhoff();
    if (f == "tetra2") return LocalSpec::tetra2();
    fail(where + " has unknown family " + f.dump());
  }
  const auto& rows = v["matrix"];
  if (!rows.is_array()) fail(where + ".matrix must be an array of rows");
  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::Index cols = -1;
  CMatrix m;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array()) fail(where + ".matrix rows must be arrays");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(n, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      fail(where + ".matrix rows differ in length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = parse_entry(row[static_cast<std::size_t>(j)], where + ".matrix entry");
    }
  }
  return LocalSpec::explicit_matrix(std::move(m));
}

json entry_json(Complex z) { return json::array({z.real(), z.imag()}); }

}  // namespace

GraphDocument parse_graph_document(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  only_fields(root, {"vertices", "internal_edges", "external_edges", "lengths_unit", "locals"},
              "graph document");

  GraphDocument doc;
  const auto& vertices = required(root, "vertices", "graph document");
  if (!vertices.is_number_integer() || vertices.get<long long>() < 0) {
    fail("vertices must be a non-negative integer");
  }
  doc.graph.vertices = vertices.get<std::size_t>();

  if (auto it = root.find("internal_edges"); it != root.end()) {
    if (!it->is_array()) fail("internal_edges must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& e = (*it)[i];
      const std::string where = "internal_edges[" + std::to_string(i + 1) + "]";
      only_fields(e, {"u", "v", "length"}, where);
      doc.graph.internal_edges.push_back({vertex_label(required(e, "u", where), where + ".u"),
                                          vertex_label(required(e, "v", where), where + ".v"),
                                          number(required(e, "length", where), where + ".length")});
    }
  }
  if (auto it = root.find("external_edges"); it != root.end()) {
    if (!it->is_array()) fail("external_edges must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto& e = (*it)[i];
      const std::string where = "external_edges[" + std::to_string(i + 1) + "]";
      only_fields(e, {"vertex"}, where);
      doc.graph.external_edges.push_back({vertex_label(required(e, "vertex", where), where)});
    }
  }
  if (auto it = root.find("lengths_unit"); it != root.end()) {
    doc.graph.lengths_unit = parse_unit(*it);
  }
  if (auto it = root.find("locals"); it != root.end()) {
    if (!it->is_array()) fail("locals must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) doc.locals.push_back(parse_local((*it)[i], i));
  }
  return doc;
}

GraphDocument load_graph_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_document(buf.str());
}

std::string to_json(const GraphDocument& doc) {
  json root;
  root["vertices"] = doc.graph.vertices;
  json internal = json::array();
  for (const auto& e : doc.graph.internal_edges) {
    internal.push_back({{"u", e.u + 1}, {"v", e.v + 1}, {"length", e.length}});
  }
  root["internal_edges"] = internal;
  json external = json::array();
  for (const auto& e : doc.graph.external_edges) external.push_back({{"vertex", e.vertex + 1}});
  root["external_edges"] = external;
  if (doc.graph.lengths_unit) root["lengths_unit"] = *doc.graph.lengths_unit;
  if (!doc.locals.empty()) {
    json locals = json::array();
    for (const auto& s : doc.locals) {
      switch (s.kind) {
        case LocalSpec::Kind::Kirchhoff: locals.push_back({{"family", "kirchhoff"}}); break;
        case LocalSpec::Kind::Tetra2: locals.push_back({{"family", "tetra2"}}); break;
        case LocalSpec::Kind::Matrix: {
          json rows = json::array();
          for (Eigen::Index i = 0; i < s.matrix.rows(); ++i) {
            json row = json::array();
            for (Eigen::Index j = 0; j < s.matrix.cols(); ++j) row.push_back(entry_json(s.matrix(i, j)));
            rows.push_back(row);
          }
          locals.push_back({{"matrix", rows}});
          break;
        }
      }
    }
    root["locals"] = locals;
  }
  return root.dump(2) + "\n";
}

LocalScattering make_local(const LocalSpec& spec, std::size_t vertex, std::size_t degree) {
  switch (spec.kind) {
    case LocalSpec::Kind::Kirchhoff: return kirchhoff_local(vertex, degree);
    case LocalSpec::Kind::Tetra2: return tetrahedron_case2_local(vertex, degree);
    case LocalSpec::Kind::Matrix: break;
  }
  return constant_local(vertex, spec.matrix);
}

QuantumGraph realize(const GraphDocument& doc) {
  Graph g = Graph::build(doc.graph);
  const std::size_t n = g.vertex_count();
  if (!doc.locals.empty() && doc.locals.size() < n) {
    throw Error(Errc::MissingVertexMatrix, "locals lists " + std::to_string(doc.locals.size()) +
                                               " matrices for " + std::to_string(n) + " vertices");
  }
  if (doc.locals.size() > n) {
    throw Error(Errc::SizeMismatch, "locals lists more matrices than there are vertices");
  }
  std::vector<LocalScattering> locals;
  for (std::size_t v = 0; v < n; ++v) {
    const LocalSpec spec = doc.locals.empty() ? LocalSpec::kirchhoff() : doc.locals[v];
    locals.push_back(make_local(spec, v, g.degree(v)));
  }
  return QuantumGraph(std::move(g), std::move(locals));
}

}  // namespace qgraph
