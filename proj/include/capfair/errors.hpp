#pragma once

#include <stdexcept>
#include <string>

namespace capfair {

// Base class for all toolkit failures. The CLI maps these to exit status 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input that does not parse as the expected format.
struct ParseError : Error {
  using Error::Error;
};

// Input that parses but violates a documented invariant.
struct ValidationError : Error {
  using Error::Error;
};

// Filesystem-level failure; the message carries the offending path.
struct IoError : Error {
  using Error::Error;
};

// Writes "capfair: warning: <message>" to stderr.
void log_warning(const std::string& message);

}  // namespace capfair
