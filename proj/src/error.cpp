#include "qgraph/error.hpp"

namespace qgraph {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::NonPositiveLength: return "NonPositiveLength";
    case Errc::DanglingVertexReference: return "DanglingVertexReference";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotInvolutive: return "NotInvolutive";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::MissingVertexMatrix: return "MissingVertexMatrix";
    case Errc::NearPole: return "NearPole";
    case Errc::SeriesDiverges: return "SeriesDiverges";
    case Errc::IncommensurableLengths: return "IncommensurableLengths";
    case Errc::NonConstantLocals: return "NonConstantLocals";
    case Errc::FitResidualTooLarge: return "FitResidualTooLarge";
    case Errc::DegenerateConstantPolynomial: return "DegenerateConstantPolynomial";
    case Errc::EmptyInterval: return "EmptyInterval";
    case Errc::NotCompact: return "NotCompact";
    case Errc::FixtureUnknown: return "FixtureUnknown";
    case Errc::NonUniformLocals: return "NonUniformLocals";
    case Errc::UnknownSolid: return "UnknownSolid";
    case Errc::UnknownFixture: return "UnknownFixture";
    case Errc::NonRegularColouring: return "NonRegularColouring";
    case Errc::InvalidColouring: return "InvalidColouring";
    case Errc::InvalidParameter: return "InvalidParameter";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

ErrorKind kind_of(Errc code) noexcept {
  switch (code) {
    case Errc::ParseError:
    case Errc::UnknownSolid:
    case Errc::UnknownFixture:
      return ErrorKind::Parse;
    case Errc::NearPole:
    case Errc::SeriesDiverges:
    case Errc::FitResidualTooLarge:
    case Errc::DegenerateConstantPolynomial:
      return ErrorKind::Numerical;
    default:
      return ErrorKind::Validation;
  }
}

}  // namespace qgraph
