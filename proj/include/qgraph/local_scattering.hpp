#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qgraph/types.hpp"

namespace qgraph {

/// Maximum-norm tolerance for S(p) S(-p) = I on accepted local matrices.
inline constexpr double kInvolutionTolerance = 1e-10;

/// 16 momenta evenly spaced on [0.1, 10] followed by their negatives.
std::span<const double> default_sample_momenta();

/// Scattering matrix S_v(p) of one vertex. Rows and columns follow the
/// vertex's local slot ordering from ModeIndex (external slots first).
class LocalScattering {
 public:
  /// Pure, thread-safe evaluator p -> S(p).
  using Evaluator = std::function<CMatrix(Complex)>;

  /// Throws SizeMismatch for non-square input and NotInvolutive unless
  /// entries * entries = I within kInvolutionTolerance.
  static LocalScattering constant(std::size_t vertex, CMatrix entries);

  /// Validated on default_sample_momenta(): every sample must have the given
  /// size and satisfy S(p) S(-p) = I.
  static LocalScattering momentum_dependent(std::size_t vertex, std::size_t size,
                                            Evaluator evaluator);

  std::size_t vertex() const { return vertex_; }
  std::size_t size() const { return size_; }
  bool is_constant() const { return !evaluator_; }

  CMatrix at(Complex p) const;

  /// The stored matrix; only valid when is_constant().
  const CMatrix& matrix() const { return constant_; }

  /// max ||S(p)^H S(p) - I|| over the real sample momenta (once for constants).
  double unitarity_defect() const;
  bool is_unitary(double tol = kInvolutionTolerance) const { return unitarity_defect() < tol; }

 private:
  LocalScattering() = default;

  std::size_t vertex_ = 0;
  std::size_t size_ = 0;
  CMatrix constant_;
  std::shared_ptr<const Evaluator> evaluator_;
};

inline LocalScattering constant_local(std::size_t vertex, CMatrix entries) {
  return LocalScattering::constant(vertex, std::move(entries));
}

/// (2/n) * ones - I: the scale-invariant Kirchhoff (Neumann) vertex.
CMatrix kirchhoff_matrix(std::size_t n);
LocalScattering kirchhoff_local(std::size_t vertex, std::size_t degree);

/// The second rotation-invariant 4x4 vertex matrix: external row
/// (-1/2, 1/2, 1/2, 1/2), internal block 5/6 on the diagonal and -1/6 off it.
CMatrix tetrahedron_case2_matrix();
/// Throws DegreeMismatch unless degree == 4.
LocalScattering tetrahedron_case2_local(std::size_t vertex, std::size_t degree = 4);

/// True iff diag(1, J) S diag(1, J^-1) = S within 1e-12, where J is the
/// permutation matrix with J(i, cycle[i]) = 1. S must have one external slot
/// followed by n internal ones and `cycle` must be a single n-cycle; otherwise
/// throws ShapeMismatch. Momentum-dependent matrices are checked on the
/// default samples.
bool check_rotation_invariance(const LocalScattering& s, std::span<const std::size_t> cycle);

}  // namespace qgraph
