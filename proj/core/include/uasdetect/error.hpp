#pragma once

#include <stdexcept>
#include <string>

namespace uasdetect {

// Base class for every error the library raises. Messages are meant to be
// shown to a user as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violated a documented precondition or invariant.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Frame dimensions disagree with the model or with earlier frames.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

}  // namespace uasdetect
