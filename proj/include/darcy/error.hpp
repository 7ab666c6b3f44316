/*
  Copyright 2026 The darcy-dd Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef DARCY_ERROR_HPP
#define DARCY_ERROR_HPP

#include <stdexcept>
#include <string>

namespace darcy {

// Error categories. The numeric values are part of the C ABI (see
// darcy_dd.h) and of the CLI exit-code mapping.
enum class ErrorCategory {
  kInvalidArgument = 1,
  kConfig = 2,
  kSpec = 3,
  kTopology = 4,
  kData = 5,
  kSolver = 6,
  kOutOfMemory = 7,
  kIo = 8,
  kInternal = 9,
};

const char* category_name(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& message)
      : std::runtime_error(message), category_(category) {}

  ErrorCategory category() const { return category_; }

 private:
  ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory category, const std::string& message) {
  throw Error(category, message);
}

}  // namespace darcy

#endif  // DARCY_ERROR_HPP
