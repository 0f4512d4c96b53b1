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

#ifndef _QQMARK_SOLVER_H
#define _QQMARK_SOLVER_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qqmark/catalog.h"
#include "qqmark/strategy_tree.h"

namespace qqmark {

struct SearchBudget {
    uint64_t max_nodes = 10'000'000;
    double max_seconds = 60.0;
};

struct SolverOptions {
    /// Skip operations whose partition has a single cell.
    bool prune_uninformative = true;
    /// Reject states holding more hypotheses than any tree over their intact halves
    /// could have leaves.
    bool capacity_bound = true;
    /// Try only one operation per orbit of the system transpositions that fix the state.
    bool merge_symmetric_operations = true;
    /// Share verdicts between states related by the label symmetry group.
    bool symmetric_memo = false;
};

struct SearchStats {
    uint64_t nodes_expanded = 0;
    uint64_t memo_hits = 0;
    uint64_t dead_pair_prunes = 0;
    uint64_t capacity_prunes = 0;
    size_t max_depth = 0;
    double elapsed_seconds = 0;

    nlohmann::json to_json() const;
};

enum class VerdictKind { Markable, Unmarkable, Undecided };
std::string verdict_name(VerdictKind v);

struct Verdict {
    VerdictKind kind = VerdictKind::Undecided;
    /// Present iff kind == Markable.
    std::optional<StrategyTree> witness;
    SearchStats stats;
};

/// Exhaustive AND-OR search over adaptive strategies. Operations are tried in
/// LPX < LPZ < SWAP order (halves by system then slot, swap pairs lexicographic) and
/// the first one whose every cell is markable becomes the witness node. Throws
/// ArgumentError for n outside 1..7.
Verdict decide_markable(const TargetSet &ts, SearchBudget budget = {}, SolverOptions options = {});

/// Key identifying a knowledge state for memoization. With `symmetric`, states related
/// by the label symmetry group (together with the target set) share a key.
std::string memo_key(const MarkingGame &game, const KnowledgeState &k, bool symmetric = false);
std::string memo_key(const TargetSet &ts, const KnowledgeState &k, bool symmetric = false);

struct ClassifyOptions {
    int n = 4;
    /// Matches CaseSignature::str(), short_str(), or "h1,h2".
    std::optional<std::string> signature_filter;
    SearchBudget budget;
    SolverOptions solver;
    int jobs = 1;
};

struct ClassifyRow {
    TargetSet set;
    size_t orbit_size = 0;
    CaseSignature signature;
    VerdictKind verdict = VerdictKind::Undecided;
    std::optional<size_t> witness_depth;
    /// "success", "failure: <reason>", or "none: <reason>".
    std::string scripted;
    std::string case_name;
    Expectation expectation = Expectation::Uncatalogued;
    /// Empty when there is nothing to compare (no expectation or undecided search).
    std::optional<bool> agree;
    SearchStats stats;

    nlohmann::json to_json() const;
};

/// One row per canonical set of size n, in canonical order. Rows are computed on
/// `jobs` worker threads; `on_row` (if given) is called in order as rows complete.
std::vector<ClassifyRow> classify(const ClassifyOptions &options,
                                  const std::function<void(const ClassifyRow &)> &on_row = nullptr);

/// Scripted-strategy column for one set: runs the scripted strategy and verifies it.
std::string scripted_outcome(const TargetSet &ts);

}  // namespace qqmark

#endif
