#pragma once

#include <stdexcept>
#include <string>

namespace shortlist {

// Malformed caller input: wrong bit-lengths, out-of-range ids, bad files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters outside the domain an operation is defined on.
class ParameterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive enumeration would exceed its configured cap.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A lemma-level audit was requested on an object whose hypothesis is unknown.
class Refused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text file parse failure; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace shortlist
