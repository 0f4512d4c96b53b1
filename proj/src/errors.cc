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

#include "qqmark/errors.h"

using namespace qqmark;

ParseError::ParseError(const std::string &message, size_t position)
    : std::invalid_argument(message + " (at position " + std::to_string(position) + ")"), position(position) {
}

MalformedStrategy::MalformedStrategy(const std::string &message, std::string path)
    : std::runtime_error(message + " (at " + (path.empty() ? std::string("root") : path) + ")"), path(std::move(path)) {
}
