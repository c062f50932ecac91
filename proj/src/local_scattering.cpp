#include "qgraph/local_scattering.hpp"

#include <array>
#include <string>
#include <utility>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

std::array<double, 32> make_samples() {
  std::array<double, 32> s{};
  for (std::size_t k = 0; k < 16; ++k) {
    s[k] = 0.1 + (10.0 - 0.1) * static_cast<double>(k) / 15.0;
    s[k + 16] = -s[k];
  }
  return s;
}

double involution_defect(const CMatrix& s_plus, const CMatrix& s_minus) {
  const auto n = s_plus.rows();
  return max_abs(CMatrix(s_plus * s_minus - CMatrix::Identity(n, n)));
}

double unitarity_defect_of(const CMatrix& s) {
  const auto n = s.rows();
  return max_abs(CMatrix(s.adjoint() * s - CMatrix::Identity(n, n)));
}

}  // namespace

std::span<const double> default_sample_momenta() {
  static const std::array<double, 32> samples = make_samples();
  return samples;
}

LocalScattering LocalScattering::constant(std::size_t vertex, CMatrix entries) {
  if (entries.rows() != entries.cols()) {
    throw Error(Errc::SizeMismatch, "local matrix at vertex " + std::to_string(vertex + 1) +
                                        " is not square");
  }
  const double defect = involution_defect(entries, entries);
  if (!(defect < kInvolutionTolerance)) {
    throw Error(Errc::NotInvolutive, "local matrix at vertex " + std::to_string(vertex + 1) +
                                         " has ||S*S - I|| = " + std::to_string(defect));
  }
  LocalScattering s;
  s.vertex_ = vertex;
  s.size_ = static_cast<std::size_t>(entries.rows());
  s.constant_ = std::move(entries);
  return s;
}

LocalScattering LocalScattering::momentum_dependent(std::size_t vertex, std::size_t size,
                                                    Evaluator evaluator) {
  const auto n = static_cast<Eigen::Index>(size);
  for (double p : default_sample_momenta()) {
    const CMatrix plus = evaluator(p);
    const CMatrix minus = evaluator(-p);
    if (plus.rows() != n || plus.cols() != n || minus.rows() != n || minus.cols() != n) {
      throw Error(Errc::SizeMismatch, "momentum-dependent local matrix at vertex " +
                                          std::to_string(vertex + 1) + " has the wrong shape");
    }
    const double defect = involution_defect(plus, minus);
    if (!(defect < kInvolutionTolerance)) {
      throw Error(Errc::NotInvolutive, "local matrix at vertex " + std::to_string(vertex + 1) +
                                           " fails S(p)S(-p) = I at p = " + std::to_string(p));
    }
  }
  LocalScattering s;
  s.vertex_ = vertex;
  s.size_ = size;
  s.evaluator_ = std::make_shared<const Evaluator>(std::move(evaluator));
  return s;
}

CMatrix LocalScattering::at(Complex p) const {
  if (evaluator_) return (*evaluator_)(p);
  return constant_;
}

double LocalScattering::unitarity_defect() const {
  if (!evaluator_) return unitarity_defect_of(constant_);
  double worst = 0.0;
  for (double p : default_sample_momenta()) worst = std::max(worst, unitarity_defect_of(at(p)));
  return worst;
}

CMatrix kirchhoff_matrix(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  return CMatrix::Constant(size, size, Complex(2.0 / static_cast<double>(n))) -
         CMatrix::Identity(size, size);
}

LocalScattering kirchhoff_local(std::size_t vertex, std::size_t degree) {
  if (degree == 0) throw Error(Errc::DegreeMismatch, "Kirchhoff vertex needs degree >= 1");
  return LocalScattering::constant(vertex, kirchhoff_matrix(degree));
}

CMatrix tetrahedron_case2_matrix() {
  CMatrix s(4, 4);
  const double h = 0.5;
  const double a = 5.0 / 6.0;
  const double b = -1.0 / 6.0;
  s << -h, h, h, h,
        h, a, b, b,
        h, b, a, b,
        h, b, b, a;
  return s;
}

LocalScattering tetrahedron_case2_local(std::size_t vertex, std::size_t degree) {
  if (degree != 4) {
    throw Error(Errc::DegreeMismatch, "tetra2 vertex matrix needs degree 4, vertex " +
                                          std::to_string(vertex + 1) + " has degree " +
                                          std::to_string(degree));
  }
  return LocalScattering::constant(vertex, tetrahedron_case2_matrix());
}

bool check_rotation_invariance(const LocalScattering& s, std::span<const std::size_t> cycle) {
  const std::size_t n = cycle.size();
  if (n == 0 || s.size() != n + 1) {
    throw Error(Errc::ShapeMismatch, "rotation needs a matrix of size 1 + cycle length");
  }
  std::vector<bool> hit(n, false);
  for (std::size_t c : cycle) {
    if (c >= n || hit[c]) throw Error(Errc::ShapeMismatch, "rotation is not a permutation");
    hit[c] = true;
  }
  std::size_t length = 0;
  std::size_t at = 0;
  do {
    at = cycle[at];
    ++length;
  } while (at != 0);
  if (length != n) throw Error(Errc::ShapeMismatch, "rotation is not a single cycle");

  const auto size = static_cast<Eigen::Index>(n + 1);
  CMatrix rot = CMatrix::Zero(size, size);
  rot(0, 0) = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    rot(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(cycle[i] + 1)) = 1.0;
  }
  auto invariant = [&](const CMatrix& m) {
    return max_abs(CMatrix(rot * m * rot.transpose() - m)) < 1e-12;
  };
  if (s.is_constant()) return invariant(s.matrix());
  for (double p : default_sample_momenta()) {
    if (!invariant(s.at(p))) return false;
  }
  return true;
}

}  // namespace qgraph
