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

#include "qqmark/ensemble.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <map>
#include <set>

#include "qqmark/errors.h"

using namespace qqmark;

TargetSet::TargetSet(std::vector<QuquadLabel> targets) : targets_(std::move(targets)) {
    if (targets_.empty() || targets_.size() > 16) {
        throw ArgumentError("a target set holds between 1 and 16 labels, got " + std::to_string(targets_.size()));
    }
    std::sort(targets_.begin(), targets_.end());
    for (size_t k = 1; k < targets_.size(); k++) {
        if (targets_[k] == targets_[k - 1]) {
            throw ArgumentError("duplicate target label " + targets_[k].str());
        }
    }
}

TargetSet TargetSet::parse(std::string_view text) {
    // Strip whitespace but remember where each remaining character came from.
    std::string s;
    std::vector<size_t> pos;
    for (size_t k = 0; k < text.size(); k++) {
        if (!std::isspace(static_cast<unsigned char>(text[k]))) {
            s.push_back(text[k]);
            pos.push_back(k);
        }
    }
    pos.push_back(text.size());

    auto fail = [&](const std::string &msg, size_t k) -> ParseError {
        return ParseError(msg, pos[std::min(k, s.size())]);
    };
    auto expect_bit = [&](size_t k) -> unsigned {
        if (k >= s.size()) {
            throw fail("unexpected end of input, expected '0' or '1'", k);
        }
        if (s[k] != '0' && s[k] != '1') {
            throw fail(std::string("unexpected '") + s[k] + "', expected '0' or '1'", k);
        }
        return s[k] - '0';
    };

    if (s.empty()) {
        throw ParseError("empty target set", 0);
    }
    std::vector<QuquadLabel> labels;
    std::set<QuquadLabel> seen;
    size_t k = 0;
    while (true) {
        size_t start = k;
        unsigned x1 = expect_bit(k++);
        unsigned z1 = expect_bit(k++);
        if (k >= s.size() || s[k] != '.') {
            throw fail(k >= s.size() ? "unexpected end of input, expected '.'"
                                     : std::string("unexpected '") + s[k] + "', expected '.'",
                       k);
        }
        k++;
        unsigned x2 = expect_bit(k++);
        unsigned z2 = expect_bit(k++);
        QuquadLabel q{BellLabel(x1, z1), BellLabel(x2, z2)};
        if (!seen.insert(q).second) {
            throw fail("duplicate target label " + q.str(), start);
        }
        labels.push_back(q);
        if (k == s.size()) {
            break;
        }
        if (s[k] != ',') {
            throw fail(std::string("unexpected '") + s[k] + "', expected ','", k);
        }
        k++;
    }
    if (labels.size() > 16) {
        throw ParseError("more than 16 labels", 0);
    }
    return TargetSet(std::move(labels));
}

TargetSet TargetSet::from_mask(uint16_t mask) {
    std::vector<QuquadLabel> labels;
    for (unsigned c = 0; c < 16; c++) {
        if (mask >> c & 1) {
            labels.push_back(QuquadLabel::from_code(c));
        }
    }
    return TargetSet(std::move(labels));
}

uint16_t TargetSet::mask() const {
    uint16_t m = 0;
    for (const auto &q : targets_) {
        m |= static_cast<uint16_t>(1u << q.code());
    }
    return m;
}

int TargetSet::index_of(QuquadLabel q) const {
    auto it = std::lower_bound(targets_.begin(), targets_.end(), q);
    if (it == targets_.end() || *it != q) {
        return -1;
    }
    return static_cast<int>(it - targets_.begin());
}

std::string TargetSet::str() const {
    std::string out;
    for (size_t k = 0; k < targets_.size(); k++) {
        if (k) {
            out += ",";
        }
        out += targets_[k].str();
    }
    return out;
}

namespace {

std::string join_profile(const std::vector<int> &p) {
    std::string out;
    for (size_t k = 0; k < p.size(); k++) {
        if (k) {
            out += "+";
        }
        out += std::to_string(p[k]);
    }
    return out;
}

std::vector<int> half_profile(const TargetSet &ts, int slot) {
    int counts[4] = {0, 0, 0, 0};
    for (const auto &q : ts) {
        counts[q.half(slot).code()]++;
    }
    std::vector<int> p;
    for (int c : counts) {
        if (c) {
            p.push_back(c);
        }
    }
    std::sort(p.begin(), p.end());
    return p;
}

// (h, multiplicities descending): larger means "more spread out" on that slot.
std::vector<int> orientation_key(const std::vector<int> &profile) {
    std::vector<int> key{static_cast<int>(profile.size())};
    key.insert(key.end(), profile.rbegin(), profile.rend());
    return key;
}

std::vector<QuquadLabel> sorted_image(const SymmetryElement &g, const TargetSet &ts) {
    std::vector<QuquadLabel> out;
    out.reserve(ts.size());
    for (const auto &q : ts) {
        out.push_back(g.apply(q));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::string CaseSignature::str() const {
    return "(" + std::to_string(h1) + "," + std::to_string(h2) + ";" + join_profile(profile1) + ";" +
           join_profile(profile2) + ")";
}

std::string CaseSignature::short_str() const {
    return "(" + std::to_string(h1) + "," + std::to_string(h2) + ")";
}

CaseSignature qqmark::case_signature(const TargetSet &ts) {
    CaseSignature sig;
    sig.profile1 = half_profile(ts, 1);
    sig.profile2 = half_profile(ts, 2);
    sig.h1 = static_cast<int>(sig.profile1.size());
    sig.h2 = static_cast<int>(sig.profile2.size());
    return sig;
}

QuquadLabel SymmetryElement::apply(QuquadLabel q) const {
    if (slot_swap) {
        std::swap(q.first, q.second);
    }
    q.first = q.first ^ t1;
    q.second = q.second ^ t2;
    if (xz_swap) {
        q.first = q.first.xz_swapped();
        q.second = q.second.xz_swapped();
    }
    return q;
}

namespace {

// Elements are determined by their action on the 16 labels.
SymmetryElement element_with_action(const std::array<unsigned, 16> &action) {
    for (const auto &g : all_symmetries()) {
        bool ok = true;
        for (unsigned c = 0; c < 16 && ok; c++) {
            ok = g.apply(QuquadLabel::from_code(c)).code() == action[c];
        }
        if (ok) {
            return g;
        }
    }
    throw std::logic_error("label action is not a group element");
}

}  // namespace

SymmetryElement SymmetryElement::inverse() const {
    std::array<unsigned, 16> action{};
    for (unsigned c = 0; c < 16; c++) {
        action[apply(QuquadLabel::from_code(c)).code()] = c;
    }
    return element_with_action(action);
}

SymmetryElement SymmetryElement::then(const SymmetryElement &b) const {
    std::array<unsigned, 16> action{};
    for (unsigned c = 0; c < 16; c++) {
        action[c] = b.apply(apply(QuquadLabel::from_code(c))).code();
    }
    return element_with_action(action);
}

std::string SymmetryElement::str() const {
    return "t1=" + t1.str() + " t2=" + t2.str() + (xz_swap ? " xz" : "") + (slot_swap ? " slots" : "");
}

const std::vector<SymmetryElement> &qqmark::all_symmetries() {
    static const std::vector<SymmetryElement> elements = [] {
        std::vector<SymmetryElement> out;
        for (int s = 0; s < 2; s++) {
            for (int xz = 0; xz < 2; xz++) {
                for (unsigned a = 0; a < 4; a++) {
                    for (unsigned b = 0; b < 4; b++) {
                        out.push_back({BellLabel::from_code(a), BellLabel::from_code(b), xz == 1, s == 1});
                    }
                }
            }
        }
        return out;
    }();
    return elements;
}

TargetSet qqmark::apply_symmetry(const SymmetryElement &g, const TargetSet &ts) {
    return TargetSet(sorted_image(g, ts));
}

TargetSet qqmark::canonical_form(const TargetSet &ts) {
    CaseSignature sig = case_signature(ts);
    auto k1 = orientation_key(sig.profile1);
    auto k2 = orientation_key(sig.profile2);
    bool allow_plain = k1 >= k2;
    bool allow_swapped = k2 >= k1;

    std::vector<QuquadLabel> best;
    for (const auto &g : all_symmetries()) {
        if (g.slot_swap ? !allow_swapped : !allow_plain) {
            continue;
        }
        auto image = sorted_image(g, ts);
        if (best.empty() || image < best) {
            best = std::move(image);
        }
    }
    return TargetSet(std::move(best));
}

std::vector<TargetSet> qqmark::orbit(const TargetSet &ts) {
    std::set<TargetSet> seen;
    for (const auto &g : all_symmetries()) {
        seen.insert(apply_symmetry(g, ts));
    }
    return {seen.begin(), seen.end()};
}

void qqmark::for_each_set(int n, const std::function<void(const TargetSet &)> &f) {
    if (n < 1 || n > 16) {
        throw ArgumentError("set size must be in 1..16, got " + std::to_string(n));
    }
    for (uint32_t mask = 0; mask < (1u << 16); mask++) {
        if (std::popcount(mask) == n) {
            f(TargetSet::from_mask(static_cast<uint16_t>(mask)));
        }
    }
}

std::vector<TargetSet> qqmark::enumerate_sets(int n) {
    std::vector<TargetSet> out;
    for_each_set(n, [&](const TargetSet &ts) { out.push_back(ts); });
    return out;
}

std::vector<CanonicalSet> qqmark::enumerate_canonical_sets(int n) {
    std::map<TargetSet, size_t> counts;
    for_each_set(n, [&](const TargetSet &ts) { counts[canonical_form(ts)]++; });
    std::vector<CanonicalSet> out;
    for (auto &[set, count] : counts) {
        out.push_back({set, count});
    }
    return out;
}
