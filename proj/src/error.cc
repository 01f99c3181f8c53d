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

#include "roomverb/error.h"

namespace roomverb {

std::string_view ErrorName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kUnsupportedFormat:
      return "UnsupportedFormat";
    case ErrorCode::kCorruptFile:
      return "CorruptFile";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kRateMismatch:
      return "RateMismatch";
    case ErrorCode::kSilentInput:
      return "SilentInput";
    case ErrorCode::kInsufficientDecay:
      return "InsufficientDecay";
    case ErrorCode::kSilentTail:
      return "SilentTail";
    case ErrorCode::kPositionOutsideRoom:
      return "PositionOutsideRoom";
    case ErrorCode::kCoincidentSourceListener:
      return "CoincidentSourceListener";
    case ErrorCode::kUnstableFilter:
      return "UnstableFilter";
    case ErrorCode::kNoMatch:
      return "NoMatch";
    case ErrorCode::kDegenerateData:
      return "DegenerateData";
    case ErrorCode::kNonPositiveValue:
      return "NonPositiveValue";
    case ErrorCode::kDrySignalTooShort:
      return "DrySignalTooShort";
  }
  return "Unknown";
}

}  // namespace roomverb
