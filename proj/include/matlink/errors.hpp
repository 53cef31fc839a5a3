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

#ifndef MATLINK_ERRORS_HPP_
#define MATLINK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace matlink {

enum class ErrorCode {
  kFieldMismatch,
  kDivisionByZero,
  kAmbientMismatch,
  kBadField,
  kUnknownLabel,
  kOverlap,
  kLabelNotSubset,
  kLabelMismatch,
  kInvalidSpec,
  kTooLarge,
  kBadElement,
  kNoSuchSeparation,
  kFlexibleElementInF,
  kBadIndices,
  kInfiniteField,
  kLabelCollision,
  kDegenerateQuotient,
  kSkewFlats,
  kNotPrimePower,
  kNotAMinor,
  kSyntaxError,
  kDimensionMismatch,
  kDuplicateLabel,
  kInternal,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this exception type. The code is
// what the CLI serializes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when a postcondition that a theorem guarantees is observed to fail.
[[noreturn]] inline void internal_error(const std::string& message) {
  throw Error(ErrorCode::kInternal, message);
}

}  // namespace matlink

#endif  // MATLINK_ERRORS_HPP_
