#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alignmatch {

enum class ErrorCode {
  DimensionMismatch,
  NonPositiveUtility,
  NonPositiveCapacity,
  TooManySchools,
  IndifferenceViolation,
  SyntaxError,
  InfeasibleAllocation,
  LengthMismatch,
  UndefinedGini,
  BudgetExceeded,
  CapacityMismatch,
  NotAGrid,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Base of every error thrown by the library. The code is stable and is what
/// the C API maps onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Two matrix cells holding the same utility value.
struct UtilityCollision {
  std::size_t student_a;
  std::size_t school_a;
  std::size_t student_b;
  std::size_t school_b;
  double value;
};

class IndifferenceViolation : public Error {
 public:
  IndifferenceViolation(const std::string& what,
                        std::vector<UtilityCollision> collisions)
      : Error(ErrorCode::IndifferenceViolation, what),
        collisions_(std::move(collisions)) {}

  const std::vector<UtilityCollision>& collisions() const noexcept {
    return collisions_;
  }

 private:
  std::vector<UtilityCollision> collisions_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::SyntaxError, what), line_(line), column_(column) {}

  // 1-based; 0 when the position is unknown.
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace alignmatch
