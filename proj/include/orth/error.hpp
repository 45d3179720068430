#pragma once

#include <stdexcept>
#include <string>

namespace orth {

// Exit-code classes used by the CLI: 2 for bad input, 3 for budget exhaustion.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Malformed structure: missing tables, non-lattices, bad frames.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace orth
