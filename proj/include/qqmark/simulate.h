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

#ifndef _QQMARK_SIMULATE_H
#define _QQMARK_SIMULATE_H

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qqmark/strategy_tree.h"

namespace qqmark {

struct TraceEvent {
    Operation op;
    std::variant<LpmOutcome, SwapOutcome> raw;
    Observation observation;
    size_t hypotheses_remaining = 0;
};

struct SimulationResult {
    std::vector<TraceEvent> events;
    Hypothesis hidden;
    Hypothesis marked;
    bool success = false;
};

/// Plays the tree against the hidden assignment, sampling local outcomes from a
/// generator seeded with `seed`. Throws MalformedStrategy when the tree has no branch
/// for a realized observation or reuses a consumed half.
SimulationResult simulate(const MarkingGame &game, const Hypothesis &hidden, const StrategyTree &tree, uint64_t seed);

/// One line per event: "step k: OP(args) raw=<...> obs=<...> |H|=<m>", then a result line.
std::string trace_text(const SimulationResult &result);
nlohmann::json trace_json(const SimulationResult &result);

}  // namespace qqmark

#endif
