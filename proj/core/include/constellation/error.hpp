#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace constellation {

enum class ErrorCode {
  // finite field
  NotPrime,
  DegreeOutOfRange,
  OrderTooLarge,
  ZeroInverse,
  BadElement,
  // affine geometry
  NotPrimePower,
  MalformedLine,
  MalformedClass,
  NotDisjoint,
  WrongCount,
  NotEnoughFoliations,
  ConditionBViolated,
  BadIndex,
  OrderMismatch,
  // latin squares
  NotLatin,
  EmptyInput,
  NotOrthogonalInput,
  NotTransversalFoliation,
  OrderOutOfRange,
  ParseError,
  PartialClash,
  CheckpointMismatch,
  // complex bases
  DimensionMismatch,
  ConstructionInvalid,
  DegenerateSpectrum,
  UnsupportedOrder,
  NotOrthonormal,
  // search
  BadSignature,
  DimensionTooSmall,
  BadCount,
  BadConfig,
  // io
  BadDocument,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace constellation
