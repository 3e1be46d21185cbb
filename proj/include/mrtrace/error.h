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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mrtrace {

enum class ErrorCode {
  kMalformedRecord,
  kMissingRequiredField,
  kEmptyTrace,
  kEmptyPath,
  kNoData,
  kInsufficientData,
  kInvalidArgument,
  kMedianZero,
  kZeroVariance,
  kTooShort,
  kKTooLarge,
  kNoCompleteJobs,
  kSpanTooLong,
  kEmptyWorkload,
  kUnsortedWorkload,
  kUnsortedStream,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library. Data-dependent failures (as opposed to
// programming errors) are reported through this type so the CLI can map them
// onto its exit-status contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

// MalformedRecord carries the 1-based source line.
class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line, const std::string& detail);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mrtrace
