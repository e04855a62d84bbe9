#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tritile {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two operands live in different numeric backends (exact vs float).
class BackendMismatch : public Error {
public:
    using Error::Error;
};

/// An operation is not available in the requested backend, or a value
/// cannot be represented in it (e.g. an irrational side length in Q(sqrt 3)).
class BackendError : public Error {
public:
    using Error::Error;
};

class DegenerateTriangleError : public Error {
public:
    using Error::Error;
};

/// Two triangles of a patch share an interior point.
class OverlapError : public Error {
public:
    OverlapError(std::size_t first, std::size_t second)
        : Error("triangles " + std::to_string(first) + " and " + std::to_string(second) +
                " have intersecting interiors"),
          first_(first),
          second_(second) {}

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class UnknownVertex : public Error {
public:
    using Error::Error;
};

/// A structural predicate was asked about a triangle whose neighbourhood is
/// truncated by the analysis window.
class IndeterminateForBoundary : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

/// The patch is not a valid tiling of the kind the structure theory assumes.
class StructureError : public Error {
public:
    using Error::Error;
};

class NonPositiveSide : public Error {
public:
    using Error::Error;
};

class DegenerateSpec : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace tritile
