#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmt {

/// Base of every error the library reports to callers.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lexer/parser failures and ill-formed input (unknown symbols, arity
/// mismatches). Line and column are 1-based; 0 means "not from text".
class ParseError : public Error {
 public:
  ParseError(const std::string &msg, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? std::to_string(line) + ":" + std::to_string(column) + ": " + msg : msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A lattice (or intermediate family) grew past the configured element cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::size_t arity, std::size_t cap)
      : Error("element cap " + std::to_string(cap) + " exceeded at arity " + std::to_string(arity)),
        arity_(arity),
        cap_(cap) {}
  std::size_t arity() const { return arity_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t arity_;
  std::size_t cap_;
};

}  // namespace pmt
