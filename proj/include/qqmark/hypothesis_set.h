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

#ifndef _QQMARK_HYPOTHESIS_SET_H
#define _QQMARK_HYPOTHESIS_SET_H

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace qqmark {

/// A bijection from system index to target index.
struct Hypothesis {
    std::vector<int> assignment;

    bool operator==(const Hypothesis &) const = default;
    auto operator<=>(const Hypothesis &) const = default;
    size_t size() const {
        return assignment.size();
    }
    int operator[](size_t system) const {
        return assignment[system];
    }
    static Hypothesis identity(int n);
    /// Comma-separated target indices, e.g. "2,0,1,3".
    std::string str() const;
    /// Parses the comma-separated form and checks it is a permutation of 0..n-1.
    static Hypothesis parse(const std::string &text, int n);
};

/// Permutations of 0..n-1 in lexicographic order (n <= 8).
class PermutationTable {
   public:
    static const PermutationTable &of(int n);

    int n() const {
        return n_;
    }
    size_t size() const {
        return count_;
    }
    int at(size_t index, int system) const {
        return entries_[index * n_ + system];
    }
    Hypothesis hypothesis(size_t index) const;
    /// Lexicographic rank of a permutation.
    size_t rank(const int *assignment) const;
    size_t rank(const Hypothesis &h) const {
        return rank(h.assignment.data());
    }

   private:
    explicit PermutationTable(int n);
    int n_;
    size_t count_;
    std::vector<uint8_t> entries_;
};

/// Fixed-universe bitset over hypothesis indices.
class HypothesisSet {
   public:
    HypothesisSet() = default;
    explicit HypothesisSet(size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {
    }
    static HypothesisSet full(size_t universe);

    size_t universe() const {
        return universe_;
    }
    size_t word_count() const {
        return words_.size();
    }
    const uint64_t *words() const {
        return words_.data();
    }
    uint64_t *words() {
        return words_.data();
    }

    bool test(size_t k) const {
        return words_[k >> 6] >> (k & 63) & 1;
    }
    void set(size_t k) {
        words_[k >> 6] |= uint64_t{1} << (k & 63);
    }
    void reset(size_t k) {
        words_[k >> 6] &= ~(uint64_t{1} << (k & 63));
    }
    size_t count() const;
    bool empty() const;
    bool intersects(const HypothesisSet &other) const;
    /// Smallest member; universe() when empty.
    size_t first() const;
    std::vector<size_t> members() const;

    template <typename F>
    void for_each(F &&f) const {
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t bits = words_[w];
            while (bits) {
                f(w * 64 + std::countr_zero(bits));
                bits &= bits - 1;
            }
        }
    }

    HypothesisSet operator&(const HypothesisSet &other) const;
    HypothesisSet operator|(const HypothesisSet &other) const;
    HypothesisSet &operator&=(const HypothesisSet &other);
    HypothesisSet &operator|=(const HypothesisSet &other);
    /// Sets *this = a & b without reallocating.
    void assign_and(const HypothesisSet &a, const HypothesisSet &b);
    bool operator==(const HypothesisSet &) const = default;

   private:
    size_t universe_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace qqmark

#endif
