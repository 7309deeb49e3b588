#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfilt {

/// Raised for every contract violation in the engine: ring/scheme mismatch,
/// bound overflow, malformed literals, failed gluing.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A literal that failed to parse. `column` is 1-based within the literal;
/// job-file loaders translate byte offsets into line/column pairs.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace qfilt
