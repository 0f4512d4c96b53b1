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

#ifndef _QQMARK_STRATEGIES_H
#define _QQMARK_STRATEGIES_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qqmark/catalog.h"
#include "qqmark/strategy_tree.h"

namespace qqmark {

/// Chooses the next operation from the current knowledge, or nothing to stop.
using Policy = std::function<std::optional<Operation>(const MarkingGame &, const KnowledgeState &)>;

struct BuildResult {
    std::optional<StrategyTree> tree;
    /// States where the policy stopped while more than one hypothesis remained.
    std::vector<KnowledgeState> stuck;
    /// Leaves where the policy stopped on a single hypothesis.
    size_t marked_leaves = 0;
};

/// Expands the policy into a full adaptive tree from `start`. A stop on a single
/// hypothesis becomes a Mark leaf; any other stop is recorded in `stuck` and leaves
/// `tree` empty.
BuildResult build_from_policy(const MarkingGame &game, const Policy &policy, const KnowledgeState &start);

/// Result of one LPM sweep over every system's `split_slot` half in `split_basis`.
/// Classes hold target indices.
struct CoarseClasses {
    std::vector<int> big;
    std::vector<int> small;
    int split_slot = 1;
    Basis split_basis = Basis::X;
};

/// Groups targets by the measured bit; empty when every target gives the same bit.
std::optional<CoarseClasses> coarse_classes(const TargetSet &ts, int slot, Basis basis);

/// Why the coarse-grain-then-swap strategy cannot run on these classes; empty if it can.
std::string coarse_obstruction(const TargetSet &ts, const CoarseClasses &classes);

struct N4Options {
    /// For four targets with four distinct first and second halves, swap each system's
    /// own halves instead of the coarse/fine LPM pair (needs distinct parity classes).
    bool swap_route = false;
};

/// Scripted tree for any four-state set. Throws ArgumentError when n != 4.
StrategyTree n4_strategy(const TargetSet &ts, N4Options options = {});

/// Coarse-grain by an LPM sweep, resolve the small class, swap the freed half into the
/// big class, finish by LPM. Throws InapplicableStrategy naming the obstruction.
StrategyTree strategy_S(const TargetSet &ts, const CoarseClasses &classes);

struct ScriptOutcome {
    std::optional<StrategyTree> tree;
    std::string case_name;
    /// Why no tree was produced; empty on success.
    std::string reason;
    /// A reachable state of the attempted script that holds a dead pair.
    std::optional<KnowledgeState> obstruction;
};

/// Throws ArgumentError when n != 5.
ScriptOutcome n5_strategy(const TargetSet &ts);
/// Throws ArgumentError when n != 6.
ScriptOutcome n6_strategy(const TargetSet &ts);

struct SevenStateBranch {
    /// Target held by the system that was left untouched by the sweep.
    int untouched_target = 0;
    /// Letter name of that target, e.g. "aα".
    std::string untouched_name;
    std::string obstruction;
    /// Terminal states of the attempt in this branch that still hold several hypotheses.
    std::vector<KnowledgeState> failed_states;
    size_t marked_leaves = 0;
    bool all_failed_states_dead = false;
};

struct SevenStateReport {
    std::vector<SevenStateBranch> branches;
    /// Every branch has at least one failed state, and each failed state holds a dead pair.
    bool every_branch_fails = false;
};

/// Runs the sweep-deduce-swap attempt on the seven-state (4,2;3+4) shape, continuing
/// each stuck state with informative LPMs until it either marks or holds a dead pair.
/// Throws ArgumentError for any other shape.
SevenStateReport n7_attempt(const TargetSet &ts);

/// Dispatches on the set size: n4/n5/n6 strategies, the seven-state attempt, or a
/// "outside catalog" outcome.
ScriptOutcome scripted_strategy(const TargetSet &ts);

}  // namespace qqmark

#endif
