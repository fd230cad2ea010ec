#pragma once

#include <stdexcept>
#include <string>

namespace shiftlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A power of t is not integrable against the measure (atom or singular density at 0).
class NonIntegrable : public Error {
 public:
  using Error::Error;
};

class GammaMismatch : public Error {
 public:
  using Error::Error;
};

// Moments collapse to zero: the measure only charges {0}.
class DegenerateTail : public Error {
 public:
  using Error::Error;
};

class NotCompletable : public Error {
 public:
  using Error::Error;
};

class PathMismatch : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class NotSubnormal : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftlab
