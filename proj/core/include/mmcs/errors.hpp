// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace mmcs {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed container: bad magic, truncated header, unparseable metadata.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Declared and actual tensor/grid dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Payload values violate an invariant (NaN entries, empty sample sets, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Beam-grid lookup or merge conflict.
class GridError : public Error {
 public:
  using Error::Error;
};

/// Calibration too close to zero for a well-conditioned division.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Numerically degenerate input: zero variance, zero noise floor, rank-deficient fit.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace mmcs
