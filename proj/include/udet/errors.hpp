// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace udet {

// Base class for all udet errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid configuration: bad shapes, out-of-range values, spec mismatches.
// CLI exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// Malformed input file. Message names the file and the line or byte offset.
// CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

// Filesystem failure (unreadable/unwritable path). CLI exit code 2.
struct IoError : Error {
  using Error::Error;
};

// Non-finite values encountered in numeric computation (training divergence,
// NaN predictions). CLI exit code 1.
struct NumericError : Error {
  using Error::Error;
};

// Metric has no defined value on the given inputs. CLI exit code 1.
struct UndefinedMetricError : Error {
  using Error::Error;
};

// API misuse, e.g. backward before forward. CLI exit code 1.
struct StateError : Error {
  using Error::Error;
};

}  // namespace udet
