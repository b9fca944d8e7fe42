#pragma once

#include <stdexcept>
#include <string>

namespace hcv {

// Base class of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the supported range (type/rank combination, twist, field).
class Unsupported : public Error {
 public:
  using Error::Error;
};

// Malformed arguments or violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An enumeration ran past its configured element or coset cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A structural claim that must hold was found to be false.  Seeing one of
// these means either a bug or a counterexample; never a user error.
class Falsification : public Error {
 public:
  using Error::Error;
};

}  // namespace hcv
