#pragma once

#include <stdexcept>
#include <string>

namespace prym {

/// Base of every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid construction parameter (e.g. a genus giving a non-positive square).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Mismatched ranks, unknown models, malformed documents.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// Malformed class expression or rational literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside the domain of a closed-form formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The (-2)-candidate search box could not be made finite.
class UnboundedSearch : public Error {
 public:
  using Error::Error;
};

/// Target class outside the shapes an operation supports.
class UnsupportedShape : public Error {
 public:
  using Error::Error;
};

/// A linear system had a solution space of unexpected dimension.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

}  // namespace prym
