#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fcu {

enum class ErrorCode {
  NonPrimeCharacteristic,
  ReducibleModulus,
  FieldTooLarge,
  DivisionByZero,
  FieldMismatch,
  UnsupportedRationalDegree,
  InvalidGroup,
  GroupMismatch,
  InfiniteOrder,
  InfiniteIndexUnsupported,
  ZeroValue,
  InvalidCocycle,
  AlgebraMismatch,
  SupportNotInSubgroup,
  CharacteristicDividesOrder,
  NotAGroupSection,
  NotUnit,
  MissingRootOfUnity,
  CharacteristicEqualsQ,
  SubgroupTooLarge,
  DimensionTooLarge,
  NotCommutative,
  TooLargeToCount,
  IdealNotNilpotent,
  InapplicableCharacteristic,
  InapplicableTorsion,
  NoSquareRoot,
  ConditionsNotMet,
  CapExceeded,
  Schema,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported through this type;
/// `code()` identifies the contract violation.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fcu
