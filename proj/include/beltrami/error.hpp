#pragma once

#include <stdexcept>
#include <string>

namespace beltrami {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different grids.
class GridMismatch : public Error {
 public:
  GridMismatch() : Error("operands are defined on different grids") {}
};

/// A constructor or operation received arguments outside its domain.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A sampled quantity violated a pointwise validity condition
/// (negative Jacobian, |mu| >= 1, non-SPD matrix, ...).
class InvalidField : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace beltrami
