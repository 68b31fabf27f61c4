#pragma once

#include <stdexcept>
#include <string>

namespace ptwalk {

struct InvalidParameter : std::invalid_argument {
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidState : std::runtime_error {
  explicit InvalidState(const std::string& what) : std::runtime_error(what) {}
};

// Requested eigenvector at a point where the two bands coalesce.
struct DegeneracyError : std::runtime_error {
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

struct NoExceptionalPoint : std::runtime_error {
  explicit NoExceptionalPoint(const std::string& what) : std::runtime_error(what) {}
};

// Wavepacket support reached both ends of the ring during a run.
struct BoundaryOverflow : std::runtime_error {
  explicit BoundaryOverflow(const std::string& what) : std::runtime_error(what) {}
};

struct SolverFailure : std::runtime_error {
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

struct SingularEigenvalue : std::runtime_error {
  explicit SingularEigenvalue(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ptwalk
