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

#ifndef _QQMARK_STRATEGY_TREE_H
#define _QQMARK_STRATEGY_TREE_H

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qqmark/protocol.h"

namespace qqmark {

/// Adaptive strategy: either mark a hypothesis, or act and branch on the observation.
class StrategyTree {
   public:
    struct Branch;

    StrategyTree() = default;
    static StrategyTree mark(Hypothesis h);
    /// Branches are sorted by observation.
    static StrategyTree act(Operation op, std::vector<Branch> branches);

    bool is_mark() const {
        return mark_.has_value();
    }
    const Hypothesis &marked() const;
    const Operation &operation() const;
    const std::vector<Branch> &branches() const {
        return branches_;
    }
    const StrategyTree *child(const Observation &obs) const;

    /// Largest number of operations along a root-to-leaf path.
    size_t depth() const;
    size_t node_count() const;
    /// Operations appearing anywhere in the tree, with repetition.
    size_t operation_count(std::optional<Operation::Kind> kind = std::nullopt) const;

    nlohmann::json to_json() const;
    /// Throws MalformedStrategy on schema errors.
    static StrategyTree from_json(const nlohmann::json &j);

    bool operator==(const StrategyTree &other) const;

   private:
    std::optional<Hypothesis> mark_;
    Operation op_;
    std::vector<Branch> branches_;
};

struct StrategyTree::Branch {
    Observation observation;
    StrategyTree subtree;
};

struct VerifyReport {
    bool success = false;
    std::optional<Hypothesis> failing_hypothesis;
    /// What went wrong for the failing hypothesis.
    std::string detail;
};

/// Checks that every hypothesis reaches a Mark leaf naming itself. Throws
/// MalformedStrategy (with the branch path) for reuse of a consumed half, or for
/// branches that do not match exactly the observations realizable at a node.
VerifyReport verify_strategy(const MarkingGame &game, const StrategyTree &tree);
VerifyReport verify_strategy(const TargetSet &ts, const StrategyTree &tree);

}  // namespace qqmark

#endif
