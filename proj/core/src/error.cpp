#include "constellation/error.hpp"

namespace constellation {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPrime:
      return "NotPrime";
    case ErrorCode::DegreeOutOfRange:
      return "DegreeOutOfRange";
    case ErrorCode::OrderTooLarge:
      return "OrderTooLarge";
    case ErrorCode::ZeroInverse:
      return "ZeroInverse";
    case ErrorCode::BadElement:
      return "BadElement";
    case ErrorCode::NotPrimePower:
      return "NotPrimePower";
    case ErrorCode::MalformedLine:
      return "MalformedLine";
    case ErrorCode::MalformedClass:
      return "MalformedClass";
    case ErrorCode::NotDisjoint:
      return "NotDisjoint";
    case ErrorCode::WrongCount:
      return "WrongCount";
    case ErrorCode::NotEnoughFoliations:
      return "NotEnoughFoliations";
    case ErrorCode::ConditionBViolated:
      return "ConditionBViolated";
    case ErrorCode::BadIndex:
      return "BadIndex";
    case ErrorCode::OrderMismatch:
      return "OrderMismatch";
    case ErrorCode::NotLatin:
      return "NotLatin";
    case ErrorCode::EmptyInput:
      return "EmptyInput";
    case ErrorCode::NotOrthogonalInput:
      return "NotOrthogonalInput";
    case ErrorCode::NotTransversalFoliation:
      return "NotTransversalFoliation";
    case ErrorCode::OrderOutOfRange:
      return "OrderOutOfRange";
    case ErrorCode::ParseError:
      return "ParseError";
    case ErrorCode::PartialClash:
      return "PartialClash";
    case ErrorCode::CheckpointMismatch:
      return "CheckpointMismatch";
    case ErrorCode::DimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::ConstructionInvalid:
      return "ConstructionInvalid";
    case ErrorCode::DegenerateSpectrum:
      return "DegenerateSpectrum";
    case ErrorCode::UnsupportedOrder:
      return "UnsupportedOrder";
    case ErrorCode::NotOrthonormal:
      return "NotOrthonormal";
    case ErrorCode::BadSignature:
      return "BadSignature";
    case ErrorCode::DimensionTooSmall:
      return "DimensionTooSmall";
    case ErrorCode::BadCount:
      return "BadCount";
    case ErrorCode::BadConfig:
      return "BadConfig";
    case ErrorCode::BadDocument:
      return "BadDocument";
  }
  return "Unknown";
}

}  // namespace constellation
