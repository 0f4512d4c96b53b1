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

#ifndef _QQMARK_CATALOG_H
#define _QQMARK_CATALOG_H

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qqmark/ensemble.h"

namespace qqmark {

/// A target-set shape written with abstract letters: first halves a..d (0..3) and
/// second halves alpha..delta (0..3). Distinct letters stand for distinct labels.
struct Pattern {
    std::string name;
    /// (first letter, second letter) per target.
    std::vector<std::pair<int, int>> cells;

    /// Parses "aA aB bB" style text: lowercase for the first half, uppercase for the second.
    static Pattern parse(std::string name, const std::string &text);
    size_t size() const {
        return cells.size();
    }
    /// "aα,aβ,..." rendering.
    std::string str() const;
};

/// An assignment of labels to a pattern's letters that reproduces a target set.
struct PatternMatch {
    const Pattern *pattern = nullptr;
    /// True when the pattern's first letters sit on slot 2 of the targets.
    bool slot_swapped = false;
    std::array<BellLabel, 4> first{};
    std::array<BellLabel, 4> second{};
    /// Target index for each pattern cell.
    std::vector<int> target_of_cell;

    int major_slot() const {
        return slot_swapped ? 2 : 1;
    }
    int minor_slot() const {
        return slot_swapped ? 1 : 2;
    }
    /// Target index of the cell (first letter f, second letter s); -1 if absent.
    int target(int f, int s) const;
};

/// Builds the target set for a pattern under the given letter assignment.
TargetSet instantiate(const Pattern &p, const std::array<BellLabel, 4> &first, const std::array<BellLabel, 4> &second,
                      bool slot_swapped = false);

/// First matching assignment, enumerating letter assignments in increasing label
/// order; unswapped orientation is tried before the swapped one.
std::optional<PatternMatch> match_pattern(const TargetSet &ts, const Pattern &p);

/// Every matching assignment in the same order as match_pattern.
std::vector<PatternMatch> all_matches(const TargetSet &ts, const Pattern &p);

/// Named shapes, grouped by set size.
const std::vector<Pattern> &four_state_patterns();
const std::vector<Pattern> &five_state_patterns();
const std::vector<Pattern> &six_state_patterns();
const std::vector<Pattern> &seven_state_patterns();
const Pattern &pattern_named(const std::string &name);

enum class Expectation { Uncatalogued, Markable, Unmarkable, ConjecturedUnmarkable };
std::string expectation_name(Expectation e);

struct CatalogEntry {
    std::string case_name;
    Expectation expectation = Expectation::Uncatalogued;
    /// Human-readable condition that decided the expectation, if any.
    std::string condition;
    std::optional<PatternMatch> match;
};

/// Classifies a set against the catalogued shapes and evaluates their markability
/// conditions directly from the label algebra.
CatalogEntry catalog_lookup(const TargetSet &ts);

}  // namespace qqmark

#endif
