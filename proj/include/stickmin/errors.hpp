#pragma once

#include <stdexcept>
#include <string>

namespace stickmin {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidPolygon : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct DegenerateSeed : Error { using Error::Error; };
struct SeedError : Error { using Error::Error; };
struct StageError : Error { using Error::Error; };
struct NotConverged : Error { using Error::Error; };
struct NoGenericProjection : Error { using Error::Error; };
struct SingularDiagram : Error { using Error::Error; };
struct MismatchedSamples : Error { using Error::Error; };
struct VerificationFailed : Error { using Error::Error; };

} // namespace stickmin
