// Copyright 2026 The ttpa Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ttpa {

enum class ErrorCode {
  kInvalidArgument,  // parameter outside a precondition
  kShapeMismatch,    // widths / lengths / dimensions disagree
  kOutOfRange,       // index outside its domain
  kMalformed,        // structurally invalid ciphertext, netlist or file
  kUnsupported,      // operation not available for this instance
  kParse,            // text could not be parsed
  kIo,               // filesystem failure
  kRuntime,          // anything else
};

const char* error_code_name(ErrorCode code) noexcept;

/// All library failures are reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// True for errors caused by caller input rather than execution failures.
  bool is_validation() const noexcept {
    return code_ != ErrorCode::kIo && code_ != ErrorCode::kRuntime;
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

/// Checks a precondition. The message is only materialized on failure, so
/// pass literals here and use `if (...) fail(...)` for composed messages.
inline void require(bool condition, ErrorCode code, std::string_view what) {
  if (!condition) [[unlikely]] fail(code, std::string(what));
}

}  // namespace ttpa
