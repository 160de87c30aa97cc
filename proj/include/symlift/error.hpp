#pragma once

#include <stdexcept>
#include <string>

namespace symlift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (bad file, bad argument, out-of-range size).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace symlift
