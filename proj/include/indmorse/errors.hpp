#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace indmorse {

/// Base class for every error the library raises.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A generator or operation received parameters outside its domain.
class parameter_error : public error {
 public:
  using error::error;
};

/// A configured budget (faces, search nodes, vertices) would be exceeded.
class size_error : public error {
 public:
  size_error(const std::string& what, std::size_t budget)
      : error(what + " (budget " + std::to_string(budget) + ")"), budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// A precondition on a data structure was violated by the caller.
class contract_error : public error {
 public:
  using error::error;
};

/// Text input could not be parsed. Line and column are 1-based.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t line, std::size_t column)
      : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace indmorse
