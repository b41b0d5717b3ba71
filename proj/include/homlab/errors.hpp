#pragma once

#include <stdexcept>
#include <string>

namespace homlab {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partial orders.
struct ClosureViolation : Error { using Error::Error; };  // closure broke antisymmetry
struct NoMinimum : Error { using Error::Error; };
struct UnknownElement : Error { using Error::Error; };
struct NoTop : Error { using Error::Error; };
struct BadParameter : Error { using Error::Error; };

// Colored graphs and the diagram calculus.
struct UnknownVertex : Error { using Error::Error; };
struct BaseContainsVertex : Error { using Error::Error; };
struct VertexInDomain : Error { using Error::Error; };
struct BaseMismatch : Error { using Error::Error; };
struct InvalidGraph : Error { using Error::Error; };

// Morphism engine.
struct PosetMismatch : Error { using Error::Error; };
struct NotHomomorphism : Error { using Error::Error; };
struct NotMonomorphism : Error { using Error::Error; };
struct NonLinearQ : Error { using Error::Error; };

// Generators.
struct SizeExplosion : Error { using Error::Error; };
struct DirectedQ : Error { using Error::Error; };
struct NonDirectedQ : Error { using Error::Error; };
struct LinearQ : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct EqualIndices : Error { using Error::Error; };
struct WrongGenerator : Error { using Error::Error; };
struct NonInjectivePattern : Error { using Error::Error; };

// Interchange files.
struct ParseError : Error { using Error::Error; };

}  // namespace homlab
