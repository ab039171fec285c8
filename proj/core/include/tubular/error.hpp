#pragma once

#include <stdexcept>
#include <string>

namespace tubular {

// Base of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad documents, unknown ids, violated
// preconditions. The CLI maps these to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

// A construction produced output that its own checkers reject. Never
// expected; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace tubular
