// SPDX-License-Identifier: Apache-2.0
//
// sparray: sparse active planar arrays, co-arrays and imaging under coupling
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparray {

// Values double as process exit codes for the command line tool.
enum class ErrorCode : int {
  usage = 2,
  input_parse = 3,
  infeasible = 4,
  invariant = 5,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::usage: return "E_USAGE";
    case ErrorCode::input_parse: return "E_PARSE";
    case ErrorCode::infeasible: return "E_INFEASIBLE";
    case ErrorCode::invariant: return "E_INVARIANT";
  }
  return "E_UNKNOWN";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Bad arguments to a library call (dimensions, ranges, thresholds).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCode::usage, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::input_parse, what) {}
};

// A self-check failed: a constructed array lost a property it must have.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(ErrorCode::invariant, what) {}
};

}  // namespace sparray
