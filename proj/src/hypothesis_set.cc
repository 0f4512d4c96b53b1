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

#include "qqmark/hypothesis_set.h"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qqmark/errors.h"

using namespace qqmark;

Hypothesis Hypothesis::identity(int n) {
    Hypothesis h;
    h.assignment.resize(n);
    std::iota(h.assignment.begin(), h.assignment.end(), 0);
    return h;
}

std::string Hypothesis::str() const {
    std::string out;
    for (size_t k = 0; k < assignment.size(); k++) {
        if (k) {
            out += ",";
        }
        out += std::to_string(assignment[k]);
    }
    return out;
}

Hypothesis Hypothesis::parse(const std::string &text, int n) {
    Hypothesis h;
    std::string item;
    std::stringstream in(text);
    while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }),
                   item.end());
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
            throw ArgumentError("hypothesis entries must be target indices, got '" + text + "'");
        }
        h.assignment.push_back(std::stoi(item));
    }
    std::vector<int> sorted = h.assignment;
    std::sort(sorted.begin(), sorted.end());
    if (static_cast<int>(sorted.size()) != n || !std::equal(sorted.begin(), sorted.end(), Hypothesis::identity(n).assignment.begin())) {
        throw ArgumentError("hypothesis '" + text + "' is not a permutation of 0.." + std::to_string(n - 1));
    }
    return h;
}

const PermutationTable &PermutationTable::of(int n) {
    if (n < 1 || n > 8) {
        throw ArgumentError("permutation tables support 1..8 systems, got " + std::to_string(n));
    }
    static std::mutex mutex;
    static std::unique_ptr<PermutationTable> tables[9];
    std::lock_guard<std::mutex> lock(mutex);
    if (!tables[n]) {
        tables[n].reset(new PermutationTable(n));
    }
    return *tables[n];
}

PermutationTable::PermutationTable(int n) : n_(n), count_(1) {
    for (int k = 2; k <= n; k++) {
        count_ *= k;
    }
    std::vector<uint8_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    entries_.reserve(count_ * n);
    do {
        entries_.insert(entries_.end(), p.begin(), p.end());
    } while (std::next_permutation(p.begin(), p.end()));
}

Hypothesis PermutationTable::hypothesis(size_t index) const {
    Hypothesis h;
    h.assignment.assign(entries_.begin() + index * n_, entries_.begin() + (index + 1) * n_);
    return h;
}

size_t PermutationTable::rank(const int *assignment) const {
    // Lehmer code read in the factorial number system.
    size_t r = 0;
    for (int i = 0; i < n_; i++) {
        int smaller = 0;
        for (int j = i + 1; j < n_; j++) {
            smaller += assignment[j] < assignment[i];
        }
        r = r * (n_ - i) + smaller;
    }
    return r;
}

HypothesisSet HypothesisSet::full(size_t universe) {
    HypothesisSet s(universe);
    for (size_t w = 0; w < s.words_.size(); w++) {
        s.words_[w] = ~uint64_t{0};
    }
    if (universe & 63) {
        s.words_.back() = (uint64_t{1} << (universe & 63)) - 1;
    }
    return s;
}

size_t HypothesisSet::count() const {
    size_t c = 0;
    for (uint64_t w : words_) {
        c += std::popcount(w);
    }
    return c;
}

bool HypothesisSet::empty() const {
    for (uint64_t w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool HypothesisSet::intersects(const HypothesisSet &other) const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w] & other.words_[w]) {
            return true;
        }
    }
    return false;
}

size_t HypothesisSet::first() const {
    for (size_t w = 0; w < words_.size(); w++) {
        if (words_[w]) {
            return w * 64 + std::countr_zero(words_[w]);
        }
    }
    return universe_;
}

std::vector<size_t> HypothesisSet::members() const {
    std::vector<size_t> out;
    for_each([&](size_t k) { out.push_back(k); });
    return out;
}

HypothesisSet HypothesisSet::operator&(const HypothesisSet &other) const {
    HypothesisSet r = *this;
    r &= other;
    return r;
}

HypothesisSet HypothesisSet::operator|(const HypothesisSet &other) const {
    HypothesisSet r = *this;
    r |= other;
    return r;
}

HypothesisSet &HypothesisSet::operator&=(const HypothesisSet &other) {
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] &= other.words_[w];
    }
    return *this;
}

HypothesisSet &HypothesisSet::operator|=(const HypothesisSet &other) {
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

void HypothesisSet::assign_and(const HypothesisSet &a, const HypothesisSet &b) {
    universe_ = a.universe_;
    words_.resize(a.words_.size());
    for (size_t w = 0; w < words_.size(); w++) {
        words_[w] = a.words_[w] & b.words_[w];
    }
}
