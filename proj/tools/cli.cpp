#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qgraph/assembler.hpp"
#include "qgraph/error.hpp"
#include "qgraph/generators.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/linalg.hpp"
#include "qgraph/solver.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph::cli {

namespace {

using nlohmann::json;

// Bad flag values (as opposed to unparseable ones).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string graph;
  std::string graph_b;
  std::optional<double> p_min;
  std::optional<double> p_max;
  std::optional<std::size_t> steps;
  std::string p_list;
  std::optional<double> unit;
  std::string out;
  std::string format = "json";
  std::optional<double> tol;
  unsigned workers = 0;
  bool all_roots = false;
  std::string generate;

  // generate parameters
  double length = 1.0;
  std::string local = "kirchhoff";
  double r = 0.6;
  double r1 = -1.0;
  double r2 = -1.0;
  std::size_t degree = 3;
  double d12 = 1.0;
  double d13 = 1.3;
  double d23 = 1.7;
};

std::string csv_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json power_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(std::norm(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> momentum_grid(const Options& o) {
  if (!o.p_list.empty()) {
    std::vector<double> out;
    std::stringstream ss(o.p_list);
    std::string item;
    while (std::getline(ss, item, ',')) {
      double x = 0.0;
      const auto* end = item.data() + item.size();
      auto [ptr, ec] = std::from_chars(item.data(), end, x);
      if (ec != std::errc() || ptr != end) {
        throw Error(Errc::ParseError, "bad momentum \"" + item + "\" in --p-list");
      }
      out.push_back(x);
    }
    if (out.empty()) throw UsageError("--p-list is empty");
    return out;
  }
  if (!o.p_min || !o.p_max || !o.steps) {
    throw Error(Errc::ParseError, "give --p-min, --p-max and --steps, or --p-list");
  }
  if (*o.steps < 1) throw UsageError("--steps must be at least 1");
  if (!(*o.p_min < *o.p_max)) throw UsageError("--p-min must be below --p-max");
  std::vector<double> out(*o.steps);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = out.size() == 1 ? *o.p_min
                             : *o.p_min + (*o.p_max - *o.p_min) * static_cast<double>(i) /
                                              static_cast<double>(out.size() - 1);
  }
  return out;
}

double tolerance(const Options& o, double fallback) {
  const double t = o.tol.value_or(fallback);
  if (!(t > 0.0)) throw UsageError("--tol must be positive");
  return t;
}

// Applies f to every index on a worker pool. Results keep index order; the
// first failure by index is rethrown so errors do not depend on scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned workers, const std::function<T(std::size_t)>& f) {
  std::vector<std::optional<T>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        results[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned count = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < count; ++k) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  out.reserve(n);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

double sigma_ratio(const QuantumGraph& qg, Complex p) {
  if (qg.graph().internal_count() == 0) return 1.0;
  const BlockSystem b = assemble_blocks(qg, p);
  const CMatrix e = assemble_propagation(qg.graph(), qg.index(), p).matrix;
  return singular_value_range(CMatrix(e - b.s22)).ratio();
}

struct StotPoint {
  double p = 0.0;
  bool near_pole = false;
  double ratio = 1.0;
  CMatrix matrix;
};

StotPoint stot_at(const QuantumGraph& qg, double p) {
  StotPoint pt;
  pt.p = p;
  try {
    const TotalSMatrix s = total_scattering(qg, p);
    pt.matrix = s.matrix;
    pt.ratio = s.condition.ratio();
  } catch (const Error& e) {
    if (e.code() != Errc::NearPole) throw;
    pt.near_pole = true;
    pt.ratio = sigma_ratio(qg, p);
  }
  return pt;
}

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw Error(Errc::ParseError, "cannot write " + o.out);
  file << text;
}

bool csv(const Options& o) {
  if (o.format == "csv") return true;
  if (o.format == "json") return false;
  throw Error(Errc::ParseError, "--format must be json or csv");
}

int cmd_stot(const Options& o, std::ostream& out) {
  const bool as_csv = csv(o);
  const QuantumGraph qg = realize(load_graph_document(o.graph));
  const auto grid = momentum_grid(o);
  const auto points = parallel_map<StotPoint>(grid.size(), o.workers,
                                              [&](std::size_t i) { return stot_at(qg, grid[i]); });
  std::ostringstream text;
  if (as_csv) {
    text << "p,near_pole,sigma_ratio,row,col,re,im,abs2\n";
    for (const auto& pt : points) {
      const std::string head =
          csv_number(pt.p) + "," + (pt.near_pole ? "1" : "0") + "," + csv_number(pt.ratio) + ",";
      if (pt.near_pole) {
        text << head << ",,,,\n";
        continue;
      }
      for (Eigen::Index i = 0; i < pt.matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < pt.matrix.cols(); ++j) {
          const Complex z = pt.matrix(i, j);
          text << head << i + 1 << "," << j + 1 << "," << csv_number(z.real()) << ","
               << csv_number(z.imag()) << "," << csv_number(std::norm(z)) << "\n";
        }
      }
    }
  } else {
    json doc{{"command", "stot"}, {"external_edges", qg.graph().external_count()}};
    json arr = json::array();
    for (const auto& pt : points) {
      json rec{{"p", pt.p}, {"near_pole", pt.near_pole}, {"sigma_ratio", pt.ratio}};
      rec["matrix"] = pt.near_pole ? json(nullptr) : matrix_json(pt.matrix);
      rec["abs2"] = pt.near_pole ? json(nullptr) : power_json(pt.matrix);
      arr.push_back(rec);
    }
    doc["points"] = arr;
    text << doc.dump(2) << "\n";
  }
  emit(o, out, text.str());
  return kOk;
}

int cmd_poles(const Options& o, std::ostream& out) {
  const bool as_csv = csv(o);
  const QuantumGraph qg = realize(load_graph_document(o.graph));
  const SecularPolynomial poly = secular_polynomial(qg, o.unit);
  const std::vector<Pole> poles =
      o.all_roots ? classify_poles(qg, poly) : scattering_poles(qg, poly);
  std::ostringstream text;
  if (as_csv) {
    text << "zeta_re,zeta_im,p_re,p_im,multiplicity,couples\n";
    for (const auto& p : poles) {
      text << csv_number(p.zeta.real()) << "," << csv_number(p.zeta.imag()) << ","
           << csv_number(p.momentum.real()) << "," << csv_number(p.momentum.imag()) << ","
           << p.multiplicity << "," << (p.couples ? 1 : 0) << "\n";
    }
  } else {
    json arr = json::array();
    for (const auto& p : poles) {
      arr.push_back({{"zeta", complex_json(p.zeta)},
                     {"p_representative", complex_json(p.momentum)},
                     {"multiplicity", p.multiplicity},
                     {"couples", p.couples}});
    }
    json doc{{"command", "poles"}, {"unit", poly.unit}, {"poles", arr}};
    text << doc.dump(2) << "\n";
  }
  emit(o, out, text.str());
  return kOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const bool as_csv = csv(o);
  if (!o.p_min || !o.p_max) throw Error(Errc::ParseError, "spectrum needs --p-min and --p-max");
  const QuantumGraph qg = realize(load_graph_document(o.graph));
  SpectrumOptions opts;
  opts.unit = o.unit;
  const std::vector<double> p = compact_spectrum(qg, *o.p_min, *o.p_max, opts);
  std::ostringstream text;
  if (as_csv) {
    text << "p\n";
    for (double x : p) text << csv_number(x) << "\n";
  } else {
    text << json{{"command", "spectrum"}, {"p", p}}.dump(2) << "\n";
  }
  emit(o, out, text.str());
  return kOk;
}

struct VerifyPoint {
  double p = 0.0;
  bool near_pole = false;
  double involution = 0.0;
  std::optional<double> unitarity;
};

int cmd_verify(const Options& o, std::ostream& out) {
  const bool as_csv = csv(o);
  const double tol = tolerance(o, 1e-8);
  const QuantumGraph qg = realize(load_graph_document(o.graph));
  const bool unitary = qg.unitary_locals();
  const auto grid = momentum_grid(o);
  const auto points = parallel_map<VerifyPoint>(grid.size(), o.workers, [&](std::size_t i) {
    VerifyPoint pt;
    pt.p = grid[i];
    try {
      pt.involution = involution_defect(qg, pt.p);
      if (unitary) pt.unitarity = unitarity_defect(qg, pt.p);
    } catch (const Error& e) {
      if (e.code() != Errc::NearPole) throw;
      pt.near_pole = true;
    }
    return pt;
  });
  double worst_inv = 0.0;
  double worst_unit = 0.0;
  for (const auto& pt : points) {
    if (pt.near_pole) continue;
    worst_inv = std::max(worst_inv, pt.involution);
    worst_unit = std::max(worst_unit, pt.unitarity.value_or(0.0));
  }
  const bool pass = worst_inv <= tol && worst_unit <= tol;

  std::ostringstream text;
  if (as_csv) {
    text << "p,near_pole,involution_defect,unitarity_defect\n";
    for (const auto& pt : points) {
      text << csv_number(pt.p) << "," << (pt.near_pole ? 1 : 0) << ","
           << (pt.near_pole ? "" : csv_number(pt.involution)) << ","
           << (pt.near_pole || !pt.unitarity ? "" : csv_number(*pt.unitarity)) << "\n";
    }
  } else {
    json arr = json::array();
    for (const auto& pt : points) {
      json rec{{"p", pt.p}, {"near_pole", pt.near_pole}};
      rec["involution_defect"] = pt.near_pole ? json(nullptr) : json(pt.involution);
      rec["unitarity_defect"] =
          pt.near_pole || !pt.unitarity ? json(nullptr) : json(*pt.unitarity);
      arr.push_back(rec);
    }
    json doc{{"command", "verify"},
             {"tolerance", tol},
             {"unitary_locals", unitary},
             {"max_involution_defect", worst_inv},
             {"max_unitarity_defect", unitary ? json(worst_unit) : json(nullptr)},
             {"pass", pass},
             {"points", arr}};
    text << doc.dump(2) << "\n";
  }
  emit(o, out, text.str());
  return pass ? kOk : kToleranceExceeded;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const bool as_csv = csv(o);
  const double tol = tolerance(o, 1e-10);
  if (o.graph_b.empty()) throw Error(Errc::ParseError, "equiv needs --graph-b");
  const QuantumGraph a = realize(load_graph_document(o.graph));
  const QuantumGraph b = realize(load_graph_document(o.graph_b));
  if (a.graph().external_count() != b.graph().external_count()) {
    throw Error(Errc::SizeMismatch, "the two graphs have different numbers of external edges");
  }
  const auto grid = momentum_grid(o);
  struct Point {
    double p;
    std::optional<double> deviation;
  };
  const auto points = parallel_map<Point>(grid.size(), o.workers, [&](std::size_t i) {
    const StotPoint x = stot_at(a, grid[i]);
    const StotPoint y = stot_at(b, grid[i]);
    Point pt{grid[i], std::nullopt};
    if (!x.near_pole && !y.near_pole) pt.deviation = max_abs(CMatrix(x.matrix - y.matrix));
    return pt;
  });
  double worst = 0.0;
  for (const auto& pt : points) worst = std::max(worst, pt.deviation.value_or(0.0));
  const bool pass = worst <= tol;

  std::ostringstream text;
  if (as_csv) {
    text << "p,near_pole,deviation\n";
    for (const auto& pt : points) {
      text << csv_number(pt.p) << "," << (pt.deviation ? 0 : 1) << ","
           << (pt.deviation ? csv_number(*pt.deviation) : "") << "\n";
    }
  } else {
    json arr = json::array();
    for (const auto& pt : points) {
      arr.push_back({{"p", pt.p},
                     {"near_pole", !pt.deviation},
                     {"deviation", pt.deviation ? json(*pt.deviation) : json(nullptr)}});
    }
    json doc{{"command", "equiv"},
             {"tolerance", tol},
             {"max_deviation", worst},
             {"pass", pass},
             {"points", arr}};
    text << doc.dump(2) << "\n";
  }
  emit(o, out, text.str());
  return pass ? kOk : kToleranceExceeded;
}

GraphDocument generated(const Options& o) {
  const std::string& name = o.generate;
  LocalSpec local;
  if (o.local == "tetra2") {
    local = LocalSpec::tetra2();
  } else if (o.local != "kirchhoff") {
    throw Error(Errc::ParseError, "--local must be kirchhoff or tetra2");
  }
  for (auto s : {"tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"}) {
    if (name == s) return platonic(parse_solid(name), o.length, local).document;
  }
  if (name == "triangle" || name == "star_loops") {
    const CMatrix k = kirchhoff_matrix(3);
    auto pair = triangle_and_star_pair(o.d12, o.d13, o.d23, {k, k, k});
    return name == "triangle" ? pair.triangle : pair.star;
  }
  CanonicalParams params;
  params.length = o.length;
  params.r = o.r;
  params.r1 = o.r1;
  params.r2 = o.r2;
  params.degree = o.degree;
  return canonical(name, params);
}

int cmd_generate(const Options& o, std::ostream& out) {
  emit(o, out, to_json(generated(o)));
  return kOk;
}

void add_grid(CLI::App* c, Options& o) {
  c->add_option("--p-min", o.p_min, "Lower end of the momentum grid");
  c->add_option("--p-max", o.p_max, "Upper end of the momentum grid");
  c->add_option("--steps", o.steps, "Number of grid points, both ends included");
  c->add_option("--p-list", o.p_list, "Comma-separated momenta instead of a grid");
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--out", o.out, "Write results here instead of stdout");
  c->add_option("--format", o.format, "json or csv");
  c->add_option("--workers", o.workers, "Worker threads (default: all processors)");
}

void add_generate_params(CLI::App* c, Options& o) {
  c->add_option("--length", o.length, "Edge length");
  c->add_option("--local", o.local, "Platonic vertex matrix: kirchhoff or tetra2");
  c->add_option("--r", o.r, "fabry_perot reflection amplitude");
  c->add_option("--r1", o.r1, "interval_compact left reflection (+1 or -1)");
  c->add_option("--r2", o.r2, "interval_compact right reflection (+1 or -1)");
  c->add_option("--degree", o.degree, "star: number of external edges");
  c->add_option("--d12", o.d12, "triangle / star_loops edge lengths");
  c->add_option("--d13", o.d13);
  c->add_option("--d23", o.d23);
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parse: return kParseError;
    case ErrorKind::Validation: return kValidationError;
    case ErrorKind::Numerical: return kNumericalError;
  }
  return kNumericalError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Total scattering matrices, poles and spectra of quantum graphs"};
  app.require_subcommand(0, 1);
  app.add_option("--generate", o.generate, "Emit the named fixture as a graph document");
  app.add_option("--out", o.out, "Write results here instead of stdout");
  add_generate_params(&app, o);

  auto* stot = app.add_subcommand("stot", "S_tot over a momentum grid");
  stot->add_option("--graph", o.graph, "Graph document")->required();
  add_grid(stot, o);
  add_output(stot, o);

  auto* poles = app.add_subcommand("poles", "Poles of S_tot in zeta = exp(-i p unit)");
  poles->add_option("--graph", o.graph, "Graph document")->required();
  poles->add_option("--unit", o.unit, "Commensurability unit (default: the document's)");
  poles->add_flag("--all-roots", o.all_roots,
                  "Also list determinant zeros that do not reach the external edges");
  add_output(poles, o);

  auto* spectrum = app.add_subcommand("spectrum", "Real spectrum of a compact graph");
  spectrum->add_option("--graph", o.graph, "Graph document")->required();
  spectrum->add_option("--p-min", o.p_min, "Exclusive lower bound")->required();
  spectrum->add_option("--p-max", o.p_max, "Inclusive upper bound")->required();
  spectrum->add_option("--unit", o.unit, "Use the secular polynomial in this unit");
  add_output(spectrum, o);

  auto* verify = app.add_subcommand("verify", "Involution and unitarity defects of S_tot");
  verify->add_option("--graph", o.graph, "Graph document")->required();
  verify->add_option("--tol", o.tol, "Largest acceptable defect (default 1e-8)");
  add_grid(verify, o);
  add_output(verify, o);

  auto* equiv = app.add_subcommand("equiv", "Compare S_tot of two graphs");
  equiv->add_option("--graph", o.graph, "First graph document")->required();
  equiv->add_option("--graph-b", o.graph_b, "Second graph document")->required();
  equiv->add_option("--tol", o.tol, "Largest acceptable deviation (default 1e-10)");
  add_grid(equiv, o);
  add_output(equiv, o);

  auto* generate = app.add_subcommand("generate", "Emit a fixture graph document");
  generate->add_option("name", o.generate, "Fixture name")->required();
  generate->add_option("--out", o.out, "Write here instead of stdout");
  add_generate_params(generate, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  }

  try {
    if (*stot) return cmd_stot(o, out);
    if (*poles) return cmd_poles(o, out);
    if (*spectrum) return cmd_spectrum(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*equiv) return cmd_equiv(o, out);
    if (*generate || !o.generate.empty()) return cmd_generate(o, out);
    err << app.help();
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace qgraph::cli
