// Copyright 2026 The ACT Authors.
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

namespace act {

enum class ErrorCode {
  kShape,               // vector/dimension mismatch between inputs
  kEmptyInput,          // an operation received no data to work on
  kParameter,           // a scalar argument is out of its valid range
  kConfig,              // a config object violates its own invariants
  kParse,               // a document or record could not be decoded
  kIo,                  // file system failure
  kData,                // dataset content failed validation
  kInfeasible,          // no grid point satisfies the guardrails
  kUnsupportedVersion,  // document kind/version not understood
  kNonFinite,           // NaN or infinity where a finite value is required
  kRefused,             // operation declined (e.g. grid over size cap)
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure with a 1-based location (line of a record file, or byte
// offset of a single-document parse).
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(ErrorCode::kParse, message), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace act
