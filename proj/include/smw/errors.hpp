#pragma once

#include <stdexcept>
#include <string>

namespace smw {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition violations that do not have a more specific class.
struct DomainError : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct DegenerateSimplex : Error {
    using Error::Error;
};

struct DegenerateFace : Error {
    using Error::Error;
};

struct SingularGenerators : Error {
    using Error::Error;
};

struct UndefinedCentroid : Error {
    using Error::Error;
};

struct EmptyRegion : Error {
    using Error::Error;
};

struct EmptyCell : Error {
    using Error::Error;
};

struct NonPositiveWeight : Error {
    using Error::Error;
};

struct AntipodalPoints : Error {
    using Error::Error;
};

struct GridMismatch : Error {
    using Error::Error;
};

struct InputError : Error {
    using Error::Error;
};

}  // namespace smw
