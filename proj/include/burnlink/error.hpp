#pragma once

#include <stdexcept>
#include <string>

namespace burnlink {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (braid words, PD files, presentations, pcp files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A vendored pc-presentation failed its consistency or exponent checks.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The finite engine cannot answer the question within its configured budget
/// (element cap exceeded, rank larger than any vendored presentation, ...).
class EngineTooSmall : public Error {
 public:
  using Error::Error;
};

}  // namespace burnlink
