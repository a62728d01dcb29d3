#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace afftree {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ModulusMismatch : public Error {
public:
  ModulusMismatch(int lhs, int rhs)
      : Error("modulus mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}
};

/// Thrown when a construction would exceed its configured state budget.
class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(std::size_t budget)
      : Error("state budget of " + std::to_string(budget) + " exceeded"), budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

private:
  std::size_t budget_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

}  // namespace afftree
