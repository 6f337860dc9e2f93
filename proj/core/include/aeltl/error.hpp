#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aeltl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in any of the textual formats. `offset` is a byte offset for
// single-line inputs (formulas, quantifiers); `line` is 1-based for files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset, std::size_t line = 0)
      : Error(what), offset_(offset), line_(line) {}

  std::size_t offset() const { return offset_; }
  std::size_t line() const { return line_; }

 private:
  std::size_t offset_;
  std::size_t line_;
};

}  // namespace aeltl
