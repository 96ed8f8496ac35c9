// Copyright 2026 The gemsim Authors
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

#ifndef GEMSIM_ERROR_HPP
#define GEMSIM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gem {

/// Failure categories. The numeric values are mirrored by the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kOutOfRange = 2,
  kNumerical = 3,
  kBudgetExceeded = 4,
  kConfig = 5,
  kIo = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace gem

#endif  // GEMSIM_ERROR_HPP
