#pragma once

#include <stdexcept>
#include <string>

namespace chdyn {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An arithmetic operation produced NaN.
class NotANumber : public Error {
 public:
  using Error::Error;
};

/// 0/0 in an iteration step.
class Indeterminate : public Error {
 public:
  using Error::Error;
};

class PoleAtPoint : public Error {
 public:
  using Error::Error;
};

/// Parameter where the family drops degree, or numerator and denominator share a root.
class DegenerateParameter : public Error {
 public:
  using Error::Error;
};

class DegenerateCriticalPoints : public Error {
 public:
  using Error::Error;
};

class RootNotPresent : public Error {
 public:
  using Error::Error;
};

class AnchorMisclassified : public Error {
 public:
  using Error::Error;
};

class PointOutsideWindow : public Error {
 public:
  using Error::Error;
};

class SignCheckFailed : public Error {
 public:
  using Error::Error;
};

class WindowNotSymmetric : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace chdyn
