#ifndef MZ_ERROR_HPP
#define MZ_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mz {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  ZeroInverse,
  UnsupportedField,
  ShapeMismatch,
  MixedFields,
  ImproperSubspace,
  BudgetExceeded,
  HypothesisFailed,
  SigmaConditionFailed,
  InvalidPart,
  ProductZero,
  BadBlocks,
  RankOutOfRange,
  DirectionInV,
  FamilyPrecondition,
  InternalContractViolation,
  ParameterViolation,
  NotNilpotent,
  NotAnMS,
  SquareParameter,
  ExcludedParameter,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them one-to-one onto mz_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace mz

#endif
