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

#ifndef _QQMARK_ENSEMBLE_H
#define _QQMARK_ENSEMBLE_H

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qqmark/bell.h"

namespace qqmark {

/// A set of distinct target labels, kept sorted by label code so that target
/// indices (and therefore hypothesis indices) are stable.
class TargetSet {
   public:
    TargetSet() = default;
    /// Throws ArgumentError on duplicates or on a size outside 1..16.
    explicit TargetSet(std::vector<QuquadLabel> targets);
    /// Grammar: ququad ("," ququad)*, ququad := bell "." bell, bell := [01][01].
    /// Whitespace is ignored. Throws ParseError carrying the offending position.
    static TargetSet parse(std::string_view text);
    /// Bit i set iff the label with code i is present.
    static TargetSet from_mask(uint16_t mask);

    size_t size() const {
        return targets_.size();
    }
    const QuquadLabel &operator[](size_t k) const {
        return targets_[k];
    }
    std::span<const QuquadLabel> targets() const {
        return targets_;
    }
    std::vector<QuquadLabel>::const_iterator begin() const {
        return targets_.begin();
    }
    std::vector<QuquadLabel>::const_iterator end() const {
        return targets_.end();
    }
    uint16_t mask() const;
    /// Index of the label in this set, or -1.
    int index_of(QuquadLabel q) const;

    bool operator==(const TargetSet &) const = default;
    /// Lexicographic comparison of the sorted label codes.
    auto operator<=>(const TargetSet &other) const {
        return targets_ <=> other.targets_;
    }

    std::string str() const;

   private:
    std::vector<QuquadLabel> targets_;
};

struct CaseSignature {
    int h1 = 0;
    int h2 = 0;
    std::vector<int> profile1;
    std::vector<int> profile2;

    bool operator==(const CaseSignature &) const = default;
    /// "(h1,h2;p1;p2)" with each half's label multiplicities ascending, e.g.
    /// "(4,2;1+1+1+1;1+3)".
    std::string str() const;
    /// Short form "(h1,h2)".
    std::string short_str() const;
};

CaseSignature case_signature(const TargetSet &ts);

/// Element of the order-64 label symmetry group. Applied to a target as: optional
/// slot swap, then XOR by t1 / t2 on the first / second half, then optional x<->z
/// exchange on both halves.
struct SymmetryElement {
    BellLabel t1;
    BellLabel t2;
    bool xz_swap = false;
    bool slot_swap = false;

    bool operator==(const SymmetryElement &) const = default;
    QuquadLabel apply(QuquadLabel q) const;
    SymmetryElement inverse() const;
    /// (a.then(b)).apply(q) == b.apply(a.apply(q)).
    SymmetryElement then(const SymmetryElement &b) const;
    std::string str() const;
};

/// All 64 elements, in a fixed order starting with the identity.
const std::vector<SymmetryElement> &all_symmetries();

TargetSet apply_symmetry(const SymmetryElement &g, const TargetSet &ts);

/// Least image under the group, restricted to images whose first-half statistics
/// (h1, multiplicities in descending order) are at least the second-half ones.
TargetSet canonical_form(const TargetSet &ts);

/// Distinct images of ts under the group, sorted.
std::vector<TargetSet> orbit(const TargetSet &ts);

/// All n-subsets of the 16 labels in increasing order of their membership mask.
std::vector<TargetSet> enumerate_sets(int n);

/// Calls f on each n-subset, same order as enumerate_sets.
void for_each_set(int n, const std::function<void(const TargetSet &)> &f);

struct CanonicalSet {
    TargetSet set;
    size_t orbit_size;
};

/// One representative per orbit, sorted by canonical form.
std::vector<CanonicalSet> enumerate_canonical_sets(int n);

}  // namespace qqmark

#endif
