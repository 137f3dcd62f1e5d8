#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shapecalc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |grad phi| vanished where a normal was requested.
class DegenerateGradient : public Error {
public:
    using Error::Error;
};

/// A point that must lie on the surface does not.
class NotOnSurface : public Error {
public:
    using Error::Error;
};

/// Iterative procedure (projection, CG, flow) failed to converge.
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// Invalid argument or violated precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Mesh topology or geometry violates the closed-manifold contract.
class MeshError : public Error {
public:
    using Error::Error;
};

/// Malformed mesh file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

}  // namespace shapecalc
