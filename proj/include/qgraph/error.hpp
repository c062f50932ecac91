#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qgraph {

enum class Errc {
  // graph model
  DisconnectedGraph,
  NonPositiveLength,
  DanglingVertexReference,
  SizeMismatch,
  // local scattering
  NotInvolutive,
  DegreeMismatch,
  ShapeMismatch,
  MissingVertexMatrix,
  // solver
  NearPole,
  SeriesDiverges,
  // spectral
  IncommensurableLengths,
  NonConstantLocals,
  FitResidualTooLarge,
  DegenerateConstantPolynomial,
  EmptyInterval,
  NotCompact,
  FixtureUnknown,
  NonUniformLocals,
  // generators
  UnknownSolid,
  UnknownFixture,
  NonRegularColouring,
  InvalidColouring,
  InvalidParameter,
  // io
  ParseError,
};

std::string_view to_string(Errc code) noexcept;

/// Failure category, used by the command line front end to pick an exit code.
enum class ErrorKind { Parse, Validation, Numerical };

ErrorKind kind_of(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  Errc code_;
};

}  // namespace qgraph
