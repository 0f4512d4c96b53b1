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

#include "qqmark/protocol.h"

#include <algorithm>
#include <cctype>

#include "qqmark/errors.h"

using namespace qqmark;

std::string HalfId::str() const {
    return std::to_string(system) + ":" + std::to_string(slot);
}

HalfId HalfId::parse(const std::string &text) {
    auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 2 != text.size() ||
        !std::all_of(text.begin(), text.begin() + colon, [](unsigned char c) { return std::isdigit(c); }) ||
        (text.back() != '1' && text.back() != '2')) {
        throw ArgumentError("expected a half of the form system:slot, got '" + text + "'");
    }
    return {std::stoi(text.substr(0, colon)), text.back() - '0'};
}

Operation Operation::lpx(HalfId h) {
    return {Kind::LPX, h, {}};
}

Operation Operation::lpz(HalfId h) {
    return {Kind::LPZ, h, {}};
}

Operation Operation::lpm(HalfId h, Basis basis) {
    return basis == Basis::X ? lpx(h) : lpz(h);
}

Operation Operation::swap(HalfId h1, HalfId h2) {
    if (h1 == h2) {
        throw ArgumentError("SWAP needs two distinct halves, got " + h1.str() + " twice");
    }
    if (h2 < h1) {
        std::swap(h1, h2);
    }
    return {Kind::SWAP, h1, h2};
}

uint32_t Operation::consumed_mask() const {
    uint32_t m = uint32_t{1} << a.index();
    if (is_swap()) {
        m |= uint32_t{1} << b.index();
    }
    return m;
}

bool Operation::operator==(const Operation &other) const {
    return kind == other.kind && a == other.a && (!is_swap() || b == other.b);
}

std::string Operation::str() const {
    switch (kind) {
        case Kind::LPX:
            return "LPX(" + a.str() + ")";
        case Kind::LPZ:
            return "LPZ(" + a.str() + ")";
        default:
            return "SWAP(" + a.str() + "," + b.str() + ")";
    }
}

Operation Operation::parse(const std::string &text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        throw ArgumentError("malformed operation '" + text + "'");
    }
    std::string name = text.substr(0, open);
    std::string args = text.substr(open + 1, text.size() - open - 2);
    if (name == "LPX" || name == "LPZ") {
        HalfId h = HalfId::parse(args);
        return name == "LPX" ? lpx(h) : lpz(h);
    }
    if (name == "SWAP") {
        auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw ArgumentError("SWAP needs two halves in '" + text + "'");
        }
        return swap(HalfId::parse(args.substr(0, comma)), HalfId::parse(args.substr(comma + 1)));
    }
    throw ArgumentError("unknown operation '" + name + "'");
}

std::string Observation::str() const {
    if (width == 1) {
        return std::to_string(value);
    }
    return BellLabel::from_code(value).str();
}

Observation Observation::parse(const std::string &text) {
    if (text == "0" || text == "1") {
        return one_bit(text[0] - '0');
    }
    try {
        return two_bit(BellLabel::parse(text));
    } catch (const ParseError &) {
        throw ArgumentError("malformed observation '" + text + "'");
    }
}

std::vector<HalfId> KnowledgeState::intact_halves() const {
    std::vector<HalfId> out;
    for (int q = 0; q < 2 * n; q++) {
        if (intact >> q & 1) {
            out.push_back(HalfId::from_index(q));
        }
    }
    return out;
}

KnowledgeState qqmark::initial_knowledge(int n) {
    if (n < 1 || n > 8) {
        throw ArgumentError("knowledge states support 1..8 systems, got " + std::to_string(n));
    }
    KnowledgeState k;
    k.n = n;
    k.intact = (uint32_t{1} << (2 * n)) - 1;
    k.hypotheses = HypothesisSet::full(PermutationTable::of(n).size());
    return k;
}

std::vector<Operation> qqmark::legal_operations(const KnowledgeState &k) {
    std::vector<HalfId> halves = k.intact_halves();
    std::vector<Operation> ops;
    ops.reserve(2 * halves.size() + halves.size() * (halves.size() - 1) / 2);
    for (HalfId h : halves) {
        ops.push_back(Operation::lpx(h));
    }
    for (HalfId h : halves) {
        ops.push_back(Operation::lpz(h));
    }
    for (size_t i = 0; i < halves.size(); i++) {
        for (size_t j = i + 1; j < halves.size(); j++) {
            ops.push_back(Operation::swap(halves[i], halves[j]));
        }
    }
    return ops;
}

BellLabel qqmark::half_label(const TargetSet &ts, const Hypothesis &h, HalfId half) {
    if (half.system < 0 || static_cast<size_t>(half.system) >= h.size() || (half.slot != 1 && half.slot != 2)) {
        throw ArgumentError("half " + half.str() + " out of range");
    }
    return ts[h[half.system]].half(half.slot);
}

Observation qqmark::observe(const TargetSet &ts, const Hypothesis &h, const Operation &op) {
    BellLabel la = half_label(ts, h, op.a);
    if (op.is_swap()) {
        return Observation::two_bit(swap_observation(la, half_label(ts, h, op.b)));
    }
    return Observation::one_bit(lpm_bit(la, op.basis()));
}

bool qqmark::is_marked(const KnowledgeState &k) {
    return k.hypotheses.count() == 1;
}

MarkingGame::MarkingGame(TargetSet ts) : ts_(std::move(ts)), n_(static_cast<int>(ts_.size())) {
    if (n_ < 1 || n_ > 7) {
        throw ArgumentError("the game engine supports 1..7 targets, got " + std::to_string(n_));
    }
    perms_ = &PermutationTable::of(n_);
    size_t count = perms_->size();
    int halves = half_count();

    labels_.resize(count * halves);
    full_signature_.resize(count);
    for (size_t k = 0; k < count; k++) {
        uint32_t sig = 0;
        for (int q = 0; q < halves; q++) {
            HalfId h = HalfId::from_index(q);
            unsigned code = ts_[perms_->at(k, h.system)].half(h.slot).code();
            labels_[k * halves + q] = static_cast<uint8_t>(code);
            sig |= code << (2 * q);
        }
        full_signature_[k] = sig;
    }

    label_masks_.assign(halves * 4, HypothesisSet(count));
    for (size_t k = 0; k < count; k++) {
        for (int q = 0; q < halves; q++) {
            label_masks_[q * 4 + labels_[k * halves + q]].set(k);
        }
    }

    lpm_masks_.assign(halves * 4, HypothesisSet(count));
    for (int q = 0; q < halves; q++) {
        for (unsigned c = 0; c < 4; c++) {
            BellLabel l = BellLabel::from_code(c);
            const HypothesisSet &m = label_masks_[q * 4 + c];
            lpm_masks_[(q * 2 + 0) * 2 + l.x()] |= m;
            lpm_masks_[(q * 2 + 1) * 2 + l.z()] |= m;
        }
    }

    pair_index_.assign(halves * halves, -1);
    int pairs = 0;
    for (int a = 0; a < halves; a++) {
        for (int b = a + 1; b < halves; b++) {
            pair_index_[a * halves + b] = pairs++;
        }
    }
    swap_masks_.assign(pairs * 4, HypothesisSet(count));
    for (size_t k = 0; k < count; k++) {
        for (int a = 0; a < halves; a++) {
            for (int b = a + 1; b < halves; b++) {
                unsigned v = labels_[k * halves + a] ^ labels_[k * halves + b];
                swap_masks_[pair_index_[a * halves + b] * 4 + v].set(k);
            }
        }
    }

    target_masks_.assign(n_ * n_, HypothesisSet(count));
    for (size_t k = 0; k < count; k++) {
        for (int s = 0; s < n_; s++) {
            target_masks_[s * n_ + perms_->at(k, s)].set(k);
        }
    }
}

size_t MarkingGame::index_of(const Hypothesis &h) const {
    if (static_cast<int>(h.size()) != n_) {
        throw ArgumentError("hypothesis " + h.str() + " does not match " + std::to_string(n_) + " systems");
    }
    return perms_->rank(h);
}

KnowledgeState MarkingGame::initial() const {
    return initial_knowledge(n_);
}

Observation MarkingGame::observe(size_t hyp, const Operation &op) const {
    BellLabel la = label(hyp, op.a);
    if (op.is_swap()) {
        return Observation::two_bit(swap_observation(la, label(hyp, op.b)));
    }
    return Observation::one_bit(lpm_bit(la, op.basis()));
}

const HypothesisSet &MarkingGame::observation_mask(const Operation &op, unsigned value) const {
    if (op.is_swap()) {
        return swap_masks_[pair_index_[op.a.index() * half_count() + op.b.index()] * 4 + value];
    }
    int basis = op.kind == Operation::Kind::LPZ ? 1 : 0;
    return lpm_masks_[(op.a.index() * 2 + basis) * 2 + value];
}

int MarkingGame::split(const HypothesisSet &h, const Operation &op, HypothesisSet *out, Observation *obs) const {
    unsigned values = op.is_swap() ? 4 : 2;
    int count = 0;
    for (unsigned v = 0; v < values; v++) {
        out[count].assign_and(h, observation_mask(op, v));
        if (!out[count].empty()) {
            obs[count] = op.is_swap() ? Observation::two_bit(BellLabel::from_code(v)) : Observation::one_bit(v);
            count++;
        }
    }
    return count;
}

namespace {

void check_half(const KnowledgeState &k, HalfId h) {
    if (h.system < 0 || h.system >= k.n || (h.slot != 1 && h.slot != 2)) {
        throw ArgumentError("half " + h.str() + " out of range for " + std::to_string(k.n) + " systems");
    }
    if (!k.is_intact(h)) {
        throw IllegalOperation("half " + h.str() + " was already consumed");
    }
}

}  // namespace

std::vector<Cell> MarkingGame::partition(const KnowledgeState &k, const Operation &op) const {
    check_half(k, op.a);
    if (op.is_swap()) {
        check_half(k, op.b);
    }
    HypothesisSet parts[4];
    Observation obs[4];
    int count = split(k.hypotheses, op, parts, obs);
    std::vector<Cell> cells;
    cells.reserve(count);
    uint32_t intact = k.intact & ~op.consumed_mask();
    for (int c = 0; c < count; c++) {
        cells.push_back({obs[c], KnowledgeState{k.n, intact, std::move(parts[c])}});
    }
    return cells;
}

unsigned MarkingGame::label_set(const HypothesisSet &h, int half_index) const {
    unsigned present = 0;
    for (unsigned c = 0; c < 4; c++) {
        if (h.intersects(label_masks_[half_index * 4 + c])) {
            present |= 1u << c;
        }
    }
    return present;
}

unsigned MarkingGame::label_set(const KnowledgeState &k, HalfId half) const {
    return label_set(k.hypotheses, half.index());
}

std::optional<BellLabel> MarkingGame::known_label(const KnowledgeState &k, HalfId half) const {
    check_half(k, half);
    unsigned present = label_set(k, half);
    if (std::popcount(present) != 1) {
        return std::nullopt;
    }
    return BellLabel::from_code(std::countr_zero(present));
}

uint32_t MarkingGame::candidates(const KnowledgeState &k, int system) const {
    uint32_t out = 0;
    for (int t = 0; t < n_; t++) {
        if (k.hypotheses.intersects(target_masks_[system * n_ + t])) {
            out |= uint32_t{1} << t;
        }
    }
    return out;
}

std::optional<int> MarkingGame::identified_target(const KnowledgeState &k, int system) const {
    uint32_t c = candidates(k, system);
    if (std::popcount(c) != 1) {
        return std::nullopt;
    }
    return std::countr_zero(c);
}

namespace {

uint32_t signature_mask(uint32_t intact, int halves) {
    uint32_t m = 0;
    for (int q = 0; q < halves; q++) {
        if (intact >> q & 1) {
            m |= uint32_t{3} << (2 * q);
        }
    }
    return m;
}

}  // namespace

std::optional<std::pair<size_t, size_t>> MarkingGame::find_dead_pair(const KnowledgeState &k) const {
    uint32_t m = signature_mask(k.intact, half_count());
    std::vector<std::pair<uint32_t, size_t>> sigs;
    sigs.reserve(k.hypotheses.count());
    k.hypotheses.for_each([&](size_t h) { sigs.emplace_back(full_signature_[h] & m, h); });
    std::sort(sigs.begin(), sigs.end());
    for (size_t i = 1; i < sigs.size(); i++) {
        if (sigs[i].first == sigs[i - 1].first) {
            return std::make_pair(sigs[i - 1].second, sigs[i].second);
        }
    }
    return std::nullopt;
}

bool MarkingGame::has_dead_pair(const HypothesisSet &h, uint32_t intact) const {
    uint32_t m = signature_mask(intact, half_count());
    thread_local std::vector<uint32_t> sigs;
    sigs.clear();
    h.for_each([&](size_t k) { sigs.push_back(full_signature_[k] & m); });
    std::sort(sigs.begin(), sigs.end());
    return std::adjacent_find(sigs.begin(), sigs.end()) != sigs.end();
}
