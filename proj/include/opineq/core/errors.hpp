#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace opineq {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A series or iteration could not be certified within its cap.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

// Two-sided enclosure of a real quantity.
struct Enclosure {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double v) const { return lo <= v && v <= hi; }
};

// Numerical procedure gave up; carries the best enclosure reached, if any.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what,
                            std::optional<Enclosure> best = std::nullopt)
      : Error(what), best_(best) {}
  const std::optional<Enclosure>& best() const noexcept { return best_; }

 private:
  std::optional<Enclosure> best_;
};

// Operator expression shape not supported by the requested operation.
class UnsupportedOperator : public Error {
 public:
  using Error::Error;
};

// A structural decision (e.g. kernel dimension) cannot be certified.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

// Malformed input document or unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace opineq
