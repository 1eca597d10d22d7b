// Copyright 2026 The topicdrift Authors.
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace topicdrift {

// Every failure surfaced by the library. what() reads
// "<module>.<operation>: <message>" so the CLI can report the origin
// without extra bookkeeping.
class Error : public std::runtime_error {
 public:
  Error(std::string_view module, std::string_view operation,
        const std::string& message)
      : std::runtime_error(std::string(module) + "." + std::string(operation) +
                           ": " + message),
        module_(module),
        operation_(operation) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& operation() const noexcept { return operation_; }

 private:
  std::string module_;
  std::string operation_;
};

}  // namespace topicdrift
