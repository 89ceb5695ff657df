#include "kloo/error.hpp"

namespace kloo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::EvenCharacteristic: return "EvenCharacteristic";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::MalformedComponent: return "MalformedComponent";
    case ErrorCode::InexactDivision: return "InexactDivision";
    case ErrorCode::NotRegularSemisimple: return "NotRegularSemisimple";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace kloo
