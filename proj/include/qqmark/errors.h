// Copyright 2026 The qqmark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef _QQMARK_ERRORS_H
#define _QQMARK_ERRORS_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qqmark {

/// Invalid argument to a library call (bad n, bad index, wrong signature).
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `position` is the 0-based offset of the offending character.
struct ParseError : std::invalid_argument {
    ParseError(const std::string &message, size_t position);
    size_t position;
};

/// An operation touched a half that was already consumed.
struct IllegalOperation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A strategy tree violates the structural rules. `path` names the offending node.
struct MalformedStrategy : std::runtime_error {
    MalformedStrategy(const std::string &message, std::string path);
    std::string path;
};

/// A scripted strategy's precondition does not hold for the given target set.
struct InapplicableStrategy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qqmark

#endif
