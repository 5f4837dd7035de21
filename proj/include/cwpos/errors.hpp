#pragma once

#include <stdexcept>
#include <string>

namespace cwpos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands live on different ambient spaces (or have different shapes).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A top-degree (n,n) form was required.
class NotTopDegree : public Error {
 public:
  using Error::Error;
};

/// A real form (or a real scalar) was required.
class NotReal : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An exact computation produced something that the theory rules out
/// (non-exact division, inconsistent linear system). Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace cwpos
