// Copyright 2026 The Quell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QUELL_ERRORS_HPP
#define QUELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace quell {

/// Raised when user-supplied input (circuit text, device files, CLI
/// parameters, malformed data) fails validation. Maps to CLI exit code 2.
class validation_error : public std::invalid_argument {
  public:
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a pipeline stage fails on well-formed input (e.g. a
/// synthesis tolerance cannot be met). Maps to CLI exit code 3.
class stage_error : public std::runtime_error {
  public:
    explicit stage_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace quell

#endif
