#pragma once

#include <stdexcept>
#include <string>

namespace hyplns {

// Error taxonomy used across the library. Everything derives from Error so
// callers can catch one type at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mismatched vector/assignment lengths, out-of-range indices.
struct DimensionError : Error {
  using Error::Error;
};

// Invalid user-supplied parameter (sizes, ratios, budgets).
struct ParameterError : Error {
  using Error::Error;
};

// A documented precondition was violated (empty pool, missing state, ...).
struct PreconditionError : Error {
  using Error::Error;
};

// Non-finite data or otherwise unusable model.
struct ModelError : Error {
  using Error::Error;
};

// File could not be parsed; carries a 1-based line number when known.
struct ParseError : Error {
  long line = -1;
  ParseError(const std::string& msg, long line_number = -1)
      : Error(line_number > 0 ? msg + " (line " + std::to_string(line_number) + ")" : msg),
        line(line_number) {}
};

// Instance uses variable domains other than {0,1}.
struct UnsupportedDomainError : Error {
  using Error::Error;
};

// Parameter/checkpoint file could not be loaded.
struct LoadError : Error {
  using Error::Error;
};

// External solver subprocess produced unusable output.
struct AdapterError : Error {
  using Error::Error;
};

// API used out of order (e.g. backward before forward).
struct StateError : Error {
  using Error::Error;
};

}  // namespace hyplns
