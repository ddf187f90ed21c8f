#pragma once

#include <stdexcept>

namespace dvpr {

// Root of every error thrown by this library. Catching dvpr::Error at a
// process boundary is sufficient to turn any failure into a diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two descriptors (or a descriptor and a model/store/file) disagree on d.
class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

// Requested cluster count cannot be satisfied by the training set.
class InfeasibleKError : public Error {
 public:
  using Error::Error;
};

// An operation that needs data received none.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

// A configuration value or argument combination is invalid.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A metric was requested on inputs where it has no definition.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// A file does not follow its declared layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A file is shorter or longer than its header promises.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input carrying unusable values.
class DataError : public Error {
 public:
  using Error::Error;
};

// More robots than frames: the contiguous split does not exist.
class InfeasibleSplitError : public Error {
 public:
  using Error::Error;
};

}  // namespace dvpr
