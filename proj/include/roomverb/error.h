/*
Copyright 2026 The roomverb Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS-IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef ROOMVERB_ERROR_H_
#define ROOMVERB_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace roomverb {

enum class ErrorCode {
  kInvalidArgument,
  kUnsupportedFormat,
  kCorruptFile,
  kIoError,
  kRateMismatch,
  kSilentInput,
  kInsufficientDecay,
  kSilentTail,
  kPositionOutsideRoom,
  kCoincidentSourceListener,
  kUnstableFilter,
  kNoMatch,
  kDegenerateData,
  kNonPositiveValue,
  kDrySignalTooShort,
};

// Stable identifier used in machine-readable error output, e.g. "RateMismatch".
std::string_view ErrorName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace roomverb

#endif  // ROOMVERB_ERROR_H_
