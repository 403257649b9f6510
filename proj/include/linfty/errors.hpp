#pragma once

#include <stdexcept>
#include <string>

namespace linfty {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands living on different coordinate charts.
class ChartMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownGenerator : public Error {
 public:
  using Error::Error;
};

/// A parity rule was violated (inhomogeneous operand, parity-changing substitution, ...).
class ParityError : public Error {
 public:
  using Error::Error;
};

/// Operation applied to a chart of the wrong kind.
class ChartKindError : public Error {
 public:
  using Error::Error;
};

}  // namespace linfty
