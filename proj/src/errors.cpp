// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "matlink/errors.hpp"

namespace matlink {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFieldMismatch: return "FieldMismatch";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kAmbientMismatch: return "AmbientMismatch";
    case ErrorCode::kBadField: return "BadField";
    case ErrorCode::kUnknownLabel: return "UnknownLabel";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kLabelNotSubset: return "LabelNotSubset";
    case ErrorCode::kLabelMismatch: return "LabelMismatch";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kBadElement: return "BadElement";
    case ErrorCode::kNoSuchSeparation: return "NoSuchSeparation";
    case ErrorCode::kFlexibleElementInF: return "FlexibleElementInF";
    case ErrorCode::kBadIndices: return "BadIndices";
    case ErrorCode::kInfiniteField: return "InfiniteField";
    case ErrorCode::kLabelCollision: return "LabelCollision";
    case ErrorCode::kDegenerateQuotient: return "DegenerateQuotient";
    case ErrorCode::kSkewFlats: return "SkewFlats";
    case ErrorCode::kNotPrimePower: return "NotPrimePower";
    case ErrorCode::kNotAMinor: return "NotAMinor";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace matlink
