#pragma once

#include <stdexcept>
#include <string>

namespace g2flow {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input: structure-equation text, JSON files, unknown catalog
/// names, unbound parameters.  CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

/// Input is well-formed but fails a mathematical gate: Jacobi identity,
/// stability, compatibility/normalization of a structure, positivity,
/// unsupported torsion class, dimension mismatches.  CLI exit code 3.
struct ValidationError : Error {
  using Error::Error;
};

/// A computation could not be carried out or left the admissible region:
/// singular solves, flow blow-up, eigenform fits that do not exist.
/// CLI exit code 4.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace g2flow
