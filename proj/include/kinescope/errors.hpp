#pragma once

#include <stdexcept>
#include <string>

namespace kinescope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// The shape is not convex (or not smooth where smoothness is required), so
/// the silhouette does not have exactly one upper and one lower tangent.
class ConvexityViolation : public Error {
public:
    using Error::Error;
};

class MismatchedCase : public Error {
public:
    using Error::Error;
};

/// The image carries no usable signal (flat zero trace).
class DegenerateImage : public Error {
public:
    using Error::Error;
};

class InsufficientData : public Error {
public:
    using Error::Error;
};

/// Malformed input file (CSV trace, vertex table, motion table).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace kinescope
