#pragma once

#include <stdexcept>
#include <string>

namespace tubeweave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition (degenerate segment, bad parameter).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A polygon or environment fails its structural invariants.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed or inconsistent file content.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Planning could not proceed (no usable nodes, missing weave side, ...).
class PlanningError : public Error {
 public:
  using Error::Error;
};

/// A file could not be opened, read, or written.
class FileError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure found no admissible solution.
class NoSolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tubeweave
