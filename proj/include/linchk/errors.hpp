#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linchk {

/// Base class of all user-facing failures.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Malformed history input. `line` is 1-based, 0 when not line-specific.
struct ParseError : Error
{
  std::size_t line;

  ParseError(std::size_t line_, const std::string& message)
  : Error("line " + std::to_string(line_) + ": " + message), line{line_} {}

  explicit ParseError(const std::string& message)
  : Error(message), line{0} {}
};

/// History violates a structural requirement (matching, completeness,
/// happens-before shape).
struct ValidationError : Error
{
  using Error::Error;
};

/// Operation is incompatible with the selected specification.
struct SpecError : Error
{
  using Error::Error;
};

/// Input exceeds a configured enumeration budget.
struct BudgetError : Error
{
  using Error::Error;
};

}
