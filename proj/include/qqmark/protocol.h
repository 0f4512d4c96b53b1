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

#ifndef _QQMARK_PROTOCOL_H
#define _QQMARK_PROTOCOL_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qqmark/bell.h"
#include "qqmark/ensemble.h"
#include "qqmark/hypothesis_set.h"

namespace qqmark {

/// One Bell pair of a system: slot 1 is the first half, slot 2 the second.
struct HalfId {
    int system = 0;
    int slot = 1;

    constexpr int index() const {
        return 2 * system + (slot - 1);
    }
    static constexpr HalfId from_index(int index) {
        return {index / 2, index % 2 + 1};
    }
    constexpr bool operator==(const HalfId &) const = default;
    constexpr auto operator<=>(const HalfId &) const = default;
    /// "system:slot", e.g. "0:2".
    std::string str() const;
    static HalfId parse(const std::string &text);
};

struct Operation {
    enum class Kind : uint8_t { LPX = 0, LPZ = 1, SWAP = 2 };

    Kind kind = Kind::LPX;
    HalfId a;
    /// Only meaningful for SWAP; always greater than a.
    HalfId b;

    static Operation lpx(HalfId h);
    static Operation lpz(HalfId h);
    static Operation lpm(HalfId h, Basis basis);
    /// Throws ArgumentError when h1 == h2. Stores the halves in increasing order.
    static Operation swap(HalfId h1, HalfId h2);

    bool is_swap() const {
        return kind == Kind::SWAP;
    }
    Basis basis() const {
        return kind == Kind::LPZ ? Basis::Z : Basis::X;
    }
    /// Bitmask over half indices consumed by the operation.
    uint32_t consumed_mask() const;
    bool operator==(const Operation &other) const;
    /// e.g. "LPX(0:1)", "SWAP(0:2,1:1)".
    std::string str() const;
    static Operation parse(const std::string &text);
};

/// The informative datum of an operation: one bit for LPM, (sx, sz) for SWAP.
struct Observation {
    uint8_t width = 1;
    uint8_t value = 0;

    static Observation one_bit(unsigned b) {
        return {1, static_cast<uint8_t>(b & 1)};
    }
    static Observation two_bit(BellLabel xor_label) {
        return {2, static_cast<uint8_t>(xor_label.code())};
    }
    bool operator==(const Observation &) const = default;
    auto operator<=>(const Observation &) const = default;
    /// "0", "1", or "sx sz" as "00".."11".
    std::string str() const;
    static Observation parse(const std::string &text);
};

struct KnowledgeState {
    int n = 0;
    /// Bit HalfId::index() set iff the half is intact.
    uint32_t intact = 0;
    HypothesisSet hypotheses;

    bool is_intact(HalfId h) const {
        return intact >> h.index() & 1;
    }
    size_t size() const {
        return hypotheses.count();
    }
    std::vector<HalfId> intact_halves() const;
    bool operator==(const KnowledgeState &) const = default;
};

struct Cell {
    Observation observation;
    KnowledgeState state;
};

KnowledgeState initial_knowledge(int n);
/// LPX on every intact half, then LPZ, then SWAP over lexicographic pairs.
std::vector<Operation> legal_operations(const KnowledgeState &k);
BellLabel half_label(const TargetSet &ts, const Hypothesis &h, HalfId half);
Observation observe(const TargetSet &ts, const Hypothesis &h, const Operation &op);
bool is_marked(const KnowledgeState &k);

/// Precomputed game engine for one target set (n <= 7): per-hypothesis labels and
/// per-operation observation masks, so that partitions are bitset intersections.
class MarkingGame {
   public:
    explicit MarkingGame(TargetSet ts);

    const TargetSet &targets() const {
        return ts_;
    }
    int n() const {
        return n_;
    }
    int half_count() const {
        return 2 * n_;
    }
    size_t hypothesis_count() const {
        return perms_->size();
    }
    const PermutationTable &permutations() const {
        return *perms_;
    }
    Hypothesis hypothesis(size_t index) const {
        return perms_->hypothesis(index);
    }
    size_t index_of(const Hypothesis &h) const;
    /// Target index of system under hypothesis index.
    int target_of(size_t hyp, int system) const {
        return perms_->at(hyp, system);
    }

    KnowledgeState initial() const;

    BellLabel label(size_t hyp, HalfId half) const {
        return BellLabel::from_code(labels_[hyp * half_count() + half.index()]);
    }
    Observation observe(size_t hyp, const Operation &op) const;

    /// Cells in increasing observation order. Throws IllegalOperation if the
    /// operation touches a consumed half.
    std::vector<Cell> partition(const KnowledgeState &k, const Operation &op) const;
    /// Raw split used by the search: fills out[0..count) and returns count. Cells are
    /// listed in observation order, empty cells omitted.
    int split(const HypothesisSet &h, const Operation &op, HypothesisSet *out, Observation *obs) const;

    /// Hypotheses whose half carries the given label.
    const HypothesisSet &label_mask(HalfId half, BellLabel label) const {
        return label_masks_[half.index() * 4 + label.code()];
    }
    /// Bitmask over label codes present on the half across k's hypotheses.
    unsigned label_set(const KnowledgeState &k, HalfId half) const;
    unsigned label_set(const HypothesisSet &h, int half_index) const;
    /// The half's label if it agrees across every hypothesis. Throws IllegalOperation
    /// for a consumed half.
    std::optional<BellLabel> known_label(const KnowledgeState &k, HalfId half) const;
    /// Bitmask over target indices the system may hold.
    uint32_t candidates(const KnowledgeState &k, int system) const;
    std::optional<int> identified_target(const KnowledgeState &k, int system) const;

    /// Two distinct hypotheses with equal labels on every intact half, if any.
    std::optional<std::pair<size_t, size_t>> find_dead_pair(const KnowledgeState &k) const;
    bool dead_pair_exists(const KnowledgeState &k) const {
        return find_dead_pair(k).has_value();
    }
    /// Same test on a raw hypothesis set.
    bool has_dead_pair(const HypothesisSet &h, uint32_t intact) const;

   private:
    const HypothesisSet &observation_mask(const Operation &op, unsigned value) const;

    TargetSet ts_;
    int n_;
    const PermutationTable *perms_;
    std::vector<uint8_t> labels_;
    std::vector<HypothesisSet> label_masks_;
    // [half][basis][bit]
    std::vector<HypothesisSet> lpm_masks_;
    // [pair index][xor code]
    std::vector<HypothesisSet> swap_masks_;
    std::vector<int> pair_index_;
    std::vector<HypothesisSet> target_masks_;  // [system * n + target]
    // Labels of all halves packed 2 bits per half index.
    std::vector<uint32_t> full_signature_;
};

}  // namespace qqmark

#endif
