#pragma once

#include <stdexcept>
#include <string>

namespace holocontact {

/// Operands disagree on center, rank, or ambient dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value that must be inverted (or sit off a branch cut) does not.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A derivative or coefficient was requested beyond the stored jet order.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A jet does not carry enough orders for the requested computation.
class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Expression or configuration text could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Expression is well formed but used in the wrong context
/// (e.g. a conjugate variable inside a holomorphic expression).
class TypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A problem description is incomplete or inconsistent (missing candidate,
/// points off the hypersurface, unknown task).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed post-condition failed to hold.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holocontact
