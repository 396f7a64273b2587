#include "sgf/error.hpp"

namespace sgf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kNotInvertible: return "NotInvertible";
    case ErrorCode::kNotAFrame: return "NotAFrame";
    case ErrorCode::kMissingBounds: return "MissingBounds";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kCommutationFailed: return "CommutationFailed";
    case ErrorCode::kIncompatibleMap: return "IncompatibleMap";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kParse: return "Parse";
  }
  return "Unknown";
}

}  // namespace sgf
