#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steinlab {

/// Operand shapes disagree (point dimension, batch/score conformance, L mismatch).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A score function produced NaN or Inf. `index` is the likelihood term,
/// sample row or particle responsible, or npos when not attributable.
class NonFiniteScore : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  NonFiniteScore(const std::string& what, std::size_t index) : std::runtime_error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A squared RKHS norm came out more negative than floating-point noise allows.
class NumericalConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative method (SGLD chain, SVGD run) left the finite range.
/// `step` is the SGLD step or SVGD round index.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : std::runtime_error(what), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Malformed config or data file. `line` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace steinlab
