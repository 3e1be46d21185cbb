// Copyright 2026 The mrtrace Authors.
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

#include "mrtrace/error.h"

namespace mrtrace {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedRecord: return "MalformedRecord";
    case ErrorCode::kMissingRequiredField: return "MissingRequiredField";
    case ErrorCode::kEmptyTrace: return "EmptyTrace";
    case ErrorCode::kEmptyPath: return "EmptyPath";
    case ErrorCode::kNoData: return "NoData";
    case ErrorCode::kInsufficientData: return "InsufficientData";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMedianZero: return "MedianZero";
    case ErrorCode::kZeroVariance: return "ZeroVariance";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kKTooLarge: return "KTooLarge";
    case ErrorCode::kNoCompleteJobs: return "NoCompleteJobs";
    case ErrorCode::kSpanTooLong: return "SpanTooLong";
    case ErrorCode::kEmptyWorkload: return "EmptyWorkload";
    case ErrorCode::kUnsortedWorkload: return "UnsortedWorkload";
    case ErrorCode::kUnsortedStream: return "UnsortedStream";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code),
      message_(message) {}

MalformedRecord::MalformedRecord(std::size_t line, const std::string& detail)
    : Error(ErrorCode::kMalformedRecord,
            "line " + std::to_string(line) + ": " + detail),
      line_(line) {}

}  // namespace mrtrace
