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

#include "qqmark/strategies.h"

#include <algorithm>
#include <bit>
#include <map>

#include "qqmark/errors.h"

using namespace qqmark;

namespace {

int other_slot(int slot) {
    return 3 - slot;
}

Basis basis_where_equal(BellLabel u, BellLabel v) {
    return u.x() == v.x() ? Basis::X : Basis::Z;
}

// Read-only helpers over one knowledge state.
struct View {
    const MarkingGame &g;
    const KnowledgeState &k;

    int n() const {
        return g.n();
    }
    bool intact(int sys, int slot) const {
        return k.is_intact({sys, slot});
    }
    std::optional<int> target_of(int sys) const {
        return g.identified_target(k, sys);
    }
    bool identified(int sys) const {
        return target_of(sys).has_value();
    }
    unsigned labels(int sys, int slot) const {
        return g.label_set(k, {sys, slot});
    }
    std::optional<int> system_holding(int target) const {
        for (int s = 0; s < n(); s++) {
            if (target_of(s) == target) {
                return s;
            }
        }
        return std::nullopt;
    }
    std::optional<int> lowest_unidentified() const {
        for (int s = 0; s < n(); s++) {
            if (!identified(s)) {
                return s;
            }
        }
        return std::nullopt;
    }
    // LPM separating the two labels still possible on the half.
    std::optional<Operation> distinguish(int sys, int slot) const {
        if (!intact(sys, slot)) {
            return std::nullopt;
        }
        unsigned present = labels(sys, slot);
        if (std::popcount(present) != 2) {
            return std::nullopt;
        }
        BellLabel lo = BellLabel::from_code(std::countr_zero(present));
        BellLabel hi = BellLabel::from_code(31 - std::countl_zero(present));
        return Operation::lpm({sys, slot}, *separating_basis(lo, hi));
    }
    // A known intact half, preferring halves of identified systems.
    std::optional<HalfId> resource() const {
        for (int pass = 0; pass < 2; pass++) {
            for (int s = 0; s < n(); s++) {
                if (pass == 0 && !identified(s)) {
                    continue;
                }
                for (int slot = 1; slot <= 2; slot++) {
                    if (intact(s, slot) && std::popcount(labels(s, slot)) == 1) {
                        return HalfId{s, slot};
                    }
                }
            }
        }
        return std::nullopt;
    }
    // Any LPM that splits the hypotheses, lowest half first, X before Z.
    std::optional<Operation> informative_lpm() const {
        for (int s = 0; s < n(); s++) {
            for (int slot = 1; slot <= 2; slot++) {
                if (!intact(s, slot)) {
                    continue;
                }
                unsigned present = labels(s, slot);
                unsigned xs = 0;
                unsigned zs = 0;
                for (unsigned c = 0; c < 4; c++) {
                    if (present >> c & 1) {
                        xs |= 1u << BellLabel::from_code(c).x();
                        zs |= 1u << BellLabel::from_code(c).z();
                    }
                }
                if (xs == 3) {
                    return Operation::lpx({s, slot});
                }
                if (zs == 3) {
                    return Operation::lpz({s, slot});
                }
            }
        }
        return std::nullopt;
    }
    Operation own_swap(int sys) const {
        return Operation::swap({sys, 1}, {sys, 2});
    }
};

struct Builder {
    const MarkingGame &g;
    const Policy &policy;
    BuildResult &result;

    std::optional<StrategyTree> build(const KnowledgeState &k) {
        std::optional<Operation> op = policy(g, k);
        if (!op) {
            if (is_marked(k)) {
                result.marked_leaves++;
                return StrategyTree::mark(g.hypothesis(k.hypotheses.first()));
            }
            result.stuck.push_back(k);
            return std::nullopt;
        }
        bool complete = true;
        std::vector<StrategyTree::Branch> branches;
        for (auto &cell : g.partition(k, *op)) {
            auto sub = build(cell.state);
            if (!sub) {
                complete = false;
            } else if (complete) {
                branches.push_back({cell.observation, std::move(*sub)});
            }
        }
        if (!complete) {
            return std::nullopt;
        }
        return StrategyTree::act(*op, std::move(branches));
    }
};

// Both LPMs on every system, in system order, regardless of what is already known.
Policy nonadaptive_two_lpm(int major, Basis major_basis, Basis minor_basis) {
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        View v{g, k};
        for (int i = 0; i < g.n(); i++) {
            if (v.intact(i, major)) {
                return Operation::lpm({i, major}, major_basis);
            }
            if (v.intact(i, other_slot(major))) {
                return Operation::lpm({i, other_slot(major)}, minor_basis);
            }
        }
        return std::nullopt;
    };
}

// Swap the two halves of every system, in system order.
Policy nonadaptive_own_swaps() {
    return [](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        View v{g, k};
        for (int i = 0; i < g.n(); i++) {
            if (v.intact(i, 1) && v.intact(i, 2)) {
                return v.own_swap(i);
            }
        }
        return std::nullopt;
    };
}

// Swap the two halves of each unresolved system until marked.
Policy adaptive_own_swaps() {
    return [](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        for (int i = 0; i < g.n(); i++) {
            if (!v.identified(i) && v.intact(i, 1) && v.intact(i, 2)) {
                return v.own_swap(i);
            }
        }
        return std::nullopt;
    };
}

// Per unresolved system: a coarse LPM on `first_slot`, then an LPM on the other half
// separating the two remaining candidates.
Policy adaptive_two_lpm(int first_slot, Basis first_basis) {
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        int i = *v.lowest_unidentified();
        if (v.intact(i, first_slot)) {
            return Operation::lpm({i, first_slot}, first_basis);
        }
        return v.distinguish(i, other_slot(first_slot));
    };
}

// Minor-half LPMs until the system holding `special` is found. If it is the first
// system, swap each remaining system's own halves; otherwise swap its known major half
// with the preceding system's major half and finish by LPM.
Policy resource_policy(int special, int major, Basis minor_basis) {
    int minor = other_slot(major);
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        auto found = v.system_holding(special);
        if (!found) {
            for (int i = 0; i < g.n(); i++) {
                if (!v.identified(i) && v.intact(i, minor)) {
                    return Operation::lpm({i, minor}, minor_basis);
                }
            }
            return std::nullopt;
        }
        int s = *found;
        if (s == 0) {
            for (int i = 1; i < g.n(); i++) {
                if (!v.identified(i) && v.intact(i, 1) && v.intact(i, 2)) {
                    return v.own_swap(i);
                }
            }
            return std::nullopt;
        }
        if (!v.identified(s - 1) && v.intact(s, major) && v.intact(s - 1, major)) {
            return Operation::swap({s, major}, {s - 1, major});
        }
        return v.distinguish(*v.lowest_unidentified(), major);
    };
}

// Major-half LPMs in `basis` until the system holding `odd` (the only target whose
// major label has its bit value) is found; swap its minor half with a neighbour's minor
// half; finish with minor-half LPMs.
Policy odd_detection_policy(int odd, int major, Basis basis) {
    int minor = other_slot(major);
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        auto found = v.system_holding(odd);
        if (!found) {
            for (int i = 0; i < g.n(); i++) {
                if (!v.identified(i) && v.intact(i, major)) {
                    return Operation::lpm({i, major}, basis);
                }
            }
            return std::nullopt;
        }
        int s = *found;
        int j = s + 1 < g.n() ? s + 1 : s - 1;
        if (!v.identified(j) && v.intact(s, minor) && v.intact(j, minor)) {
            return Operation::swap({s, minor}, {j, minor});
        }
        return v.distinguish(*v.lowest_unidentified(), minor);
    };
}

// Resolves the unresolved systems class by class (smallest class first), classes being
// the bit values left by the sweep over `split_slot`: an LPM when two labels remain on
// the other half, a swap against a known half when more remain.
std::optional<Operation> finish_classes(const View &v, int split_slot, Basis basis) {
    int comp = other_slot(split_slot);
    std::map<unsigned, std::vector<int>> groups;
    for (int i = 0; i < v.n(); i++) {
        uint32_t cand = v.g.candidates(v.k, i);
        if (std::popcount(cand) > 1) {
            unsigned bit = v.g.targets()[std::countr_zero(cand)].half(split_slot).bit(basis);
            groups[bit].push_back(i);
        }
    }
    if (groups.empty()) {
        return std::nullopt;
    }
    const std::vector<int> *first = nullptr;
    for (const auto &[bit, members] : groups) {
        if (!first || members.size() < first->size() ||
            (members.size() == first->size() && members.front() < first->front())) {
            first = &members;
        }
    }
    int i = first->front();
    if (!v.intact(i, comp)) {
        return std::nullopt;
    }
    int remaining = std::popcount(v.labels(i, comp));
    if (remaining == 2) {
        return v.distinguish(i, comp);
    }
    if (remaining >= 3) {
        if (auto r = v.resource()) {
            return Operation::swap(*r, {i, comp});
        }
    }
    return std::nullopt;
}

// LPM sweep over every system's split half, then nothing.
Policy sweep_policy(int split_slot, Basis basis) {
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        View v{g, k};
        for (int i = 0; i < g.n(); i++) {
            if (v.intact(i, split_slot)) {
                return Operation::lpm({i, split_slot}, basis);
            }
        }
        return std::nullopt;
    };
}

Policy coarse_policy(int split_slot, Basis basis) {
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        View v{g, k};
        for (int i = 0; i < g.n(); i++) {
            if (v.intact(i, split_slot)) {
                return Operation::lpm({i, split_slot}, basis);
            }
        }
        if (is_marked(k)) {
            return std::nullopt;
        }
        return finish_classes(v, split_slot, basis);
    };
}

// Minor-half LPMs on the five systems where the special one was found first.
// The five-state shape with one target alone on its minor label: minor-half LPMs until
// that target's system is found, own-half swaps on the systems after it, a swap of its
// known major half into the preceding system, and LPMs to finish. When the special
// system is only deduced (last position), both of its halves serve as swap resources.
Policy lone_minor_policy(int special, int major, Basis minor_basis) {
    int minor = other_slot(major);
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        auto found = v.system_holding(special);
        if (!found) {
            for (int i = 0; i < g.n(); i++) {
                if (!v.identified(i) && v.intact(i, minor)) {
                    return Operation::lpm({i, minor}, minor_basis);
                }
            }
            return std::nullopt;
        }
        int s = *found;
        bool deduced = v.intact(s, minor);
        if (!deduced) {
            for (int j = s + 1; j < g.n(); j++) {
                if (!v.identified(j) && v.intact(j, 1) && v.intact(j, 2)) {
                    return v.own_swap(j);
                }
            }
        }
        if (s >= 1 && !v.identified(s - 1) && v.intact(s, major) && v.intact(s - 1, major)) {
            return Operation::swap({s, major}, {s - 1, major});
        }
        if (deduced && s >= 2 && !v.identified(s - 2) && v.intact(s, minor) && v.intact(s - 2, major)) {
            return Operation::swap({s, minor}, {s - 2, major});
        }
        return v.distinguish(*v.lowest_unidentified(), major);
    };
}

// Minor-half LPMs on all systems but the last, which is then resolved by swapping its
// own halves; the rest is finished class by class.
Policy sweep_deduce_swap_policy(int minor, Basis minor_basis, bool fallback) {
    return [=](const MarkingGame &g, const KnowledgeState &k) -> std::optional<Operation> {
        if (is_marked(k)) {
            return std::nullopt;
        }
        View v{g, k};
        int last = g.n() - 1;
        for (int i = 0; i < last; i++) {
            if (v.intact(i, minor)) {
                return Operation::lpm({i, minor}, minor_basis);
            }
        }
        if (!v.identified(last) && v.intact(last, 1) && v.intact(last, 2)) {
            return v.own_swap(last);
        }
        if (auto op = finish_classes(v, minor, minor_basis)) {
            return op;
        }
        if (fallback) {
            return v.informative_lpm();
        }
        return std::nullopt;
    };
}

StrategyTree build_or_throw(const MarkingGame &game, const Policy &policy, const std::string &what) {
    BuildResult r = build_from_policy(game, policy, game.initial());
    if (!r.tree) {
        throw std::logic_error(what + " stopped with " + std::to_string(r.stuck.size()) + " unresolved states");
    }
    return std::move(*r.tree);
}

Policy four_state_policy(const TargetSet &ts, const PatternMatch &m, N4Options options) {
    const std::string &name = m.pattern->name;
    const auto &f = m.first;
    const auto &s = m.second;
    int major = m.major_slot();
    int minor = m.minor_slot();
    if (name == "(2,2)") {
        Policy p = nonadaptive_two_lpm(major, *separating_basis(f[0], f[1]), *separating_basis(s[0], s[1]));
        return p;
    }
    if (name == "(4,1)") {
        return nonadaptive_own_swaps();
    }
    if (name == "(4,4)") {
        if (options.swap_route) {
            bool distinct = true;
            for (size_t i = 0; i < ts.size(); i++) {
                for (size_t j = i + 1; j < ts.size(); j++) {
                    distinct &= parity_class(ts[i]) != parity_class(ts[j]);
                }
            }
            if (distinct) {
                return adaptive_own_swaps();
            }
        }
        return adaptive_two_lpm(major, Basis::X);
    }
    if (name == "(4,2;2+2)" || name == "(3,2;2+2)") {
        return adaptive_two_lpm(minor, *separating_basis(s[0], s[1]));
    }
    if (name == "(4,2;1+3)") {
        return resource_policy(m.target(3, 1), major, *separating_basis(s[0], s[1]));
    }
    if (name == "(3,2;1+3)") {
        return resource_policy(m.target(0, 1), major, *separating_basis(s[0], s[1]));
    }
    if (name == "(4,3)") {
        return adaptive_two_lpm(major, *separating_basis(f[2], f[3]));
    }
    if (name == "(3,3) disjoint pairs") {
        // b and c both pair with alpha; pick one whose major label is the odd one out.
        for (int odd : {2, 1}) {
            int other = 3 - odd;
            for (Basis b : {Basis::X, Basis::Z}) {
                if (f[odd].bit(b) != f[0].bit(b) && f[odd].bit(b) != f[other].bit(b)) {
                    return odd_detection_policy(m.target(odd, 0), major, b);
                }
            }
        }
        throw std::logic_error("no odd major label in " + ts.str());
    }
    if (name == "(3,3) shared target") {
        if (!in_D(f[1], f[2])) {
            return adaptive_two_lpm(major, basis_where_equal(f[1], f[2]));
        }
        if (!in_D(s[1], s[2])) {
            return adaptive_two_lpm(minor, basis_where_equal(s[1], s[2]));
        }
        return odd_detection_policy(m.target(1, 0), major, basis_where_equal(f[0], f[2]));
    }
    throw std::logic_error("no four-state policy for " + name);
}

// Step-1 leaves of a sweep over the split, first one holding a dead pair.
std::optional<KnowledgeState> sweep_obstruction(const MarkingGame &game, int slot, Basis basis) {
    BuildResult r = build_from_policy(game, sweep_policy(slot, basis), game.initial());
    for (const auto &k : r.stuck) {
        if (game.dead_pair_exists(k)) {
            return k;
        }
    }
    return std::nullopt;
}

std::string letter_name(const PatternMatch &m, int target) {
    static const char *greek[4] = {"α", "β", "γ", "δ"};
    for (size_t c = 0; c < m.target_of_cell.size(); c++) {
        if (m.target_of_cell[c] == target) {
            auto [f, s] = m.pattern->cells[c];
            return std::string(1, static_cast<char>('a' + f)) + greek[s];
        }
    }
    return "?";
}

}  // namespace

BuildResult qqmark::build_from_policy(const MarkingGame &game, const Policy &policy, const KnowledgeState &start) {
    BuildResult result;
    Builder b{game, policy, result};
    result.tree = b.build(start);
    return result;
}

std::optional<CoarseClasses> qqmark::coarse_classes(const TargetSet &ts, int slot, Basis basis) {
    std::vector<int> by_bit[2];
    for (size_t t = 0; t < ts.size(); t++) {
        by_bit[ts[t].half(slot).bit(basis)].push_back(static_cast<int>(t));
    }
    if (by_bit[0].empty() || by_bit[1].empty()) {
        return std::nullopt;
    }
    CoarseClasses c;
    bool zero_small = by_bit[0].size() < by_bit[1].size() ||
                      (by_bit[0].size() == by_bit[1].size() && by_bit[0].front() > by_bit[1].front());
    c.small = by_bit[zero_small ? 0 : 1];
    c.big = by_bit[zero_small ? 1 : 0];
    c.split_slot = slot;
    c.split_basis = basis;
    return c;
}

std::string qqmark::coarse_obstruction(const TargetSet &ts, const CoarseClasses &classes) {
    if (classes.big.size() != 3 || classes.small.size() != 2) {
        return "coarse classes have sizes " + std::to_string(classes.big.size()) + " and " +
               std::to_string(classes.small.size()) + " instead of 3 and 2";
    }
    int comp = other_slot(classes.split_slot);
    auto has_duplicates = [&](const std::vector<int> &members) {
        for (size_t i = 0; i < members.size(); i++) {
            for (size_t j = i + 1; j < members.size(); j++) {
                if (ts[members[i]].half(comp) == ts[members[j]].half(comp)) {
                    return true;
                }
            }
        }
        return false;
    };
    bool small_dup = has_duplicates(classes.small);
    bool big_dup = has_duplicates(classes.big);
    if (small_dup && big_dup) {
        return "duplicate intact halves in C2 and C3";
    }
    if (small_dup) {
        return "duplicate intact halves in C2";
    }
    if (big_dup) {
        return "duplicate intact halves in C3";
    }
    return "";
}

StrategyTree qqmark::n4_strategy(const TargetSet &ts, N4Options options) {
    if (ts.size() != 4) {
        throw ArgumentError("the four-state strategy needs 4 targets, got " + std::to_string(ts.size()));
    }
    std::optional<PatternMatch> m;
    for (const auto &p : four_state_patterns()) {
        if ((m = match_pattern(ts, p))) {
            break;
        }
    }
    if (!m) {
        throw std::logic_error("four-state set " + ts.str() + " matches no shape");
    }
    MarkingGame game(ts);
    return build_or_throw(game, four_state_policy(ts, *m, options), "four-state strategy " + m->pattern->name);
}

StrategyTree qqmark::strategy_S(const TargetSet &ts, const CoarseClasses &classes) {
    std::string why = coarse_obstruction(ts, classes);
    if (!why.empty()) {
        throw InapplicableStrategy(why);
    }
    MarkingGame game(ts);
    return build_or_throw(game, coarse_policy(classes.split_slot, classes.split_basis), "coarse-grain strategy");
}

ScriptOutcome qqmark::n5_strategy(const TargetSet &ts) {
    if (ts.size() != 5) {
        throw ArgumentError("the five-state strategy needs 5 targets, got " + std::to_string(ts.size()));
    }
    ScriptOutcome out;
    std::optional<PatternMatch> m;
    for (const auto &p : five_state_patterns()) {
        if ((m = match_pattern(ts, p))) {
            break;
        }
    }
    if (!m) {
        out.reason = "outside catalog";
        return out;
    }
    out.case_name = m->pattern->name;
    MarkingGame game(ts);
    const auto &s = m->second;

    if (out.case_name == "(4,2;1+4)") {
        out.tree = build_or_throw(game, lone_minor_policy(m->target(0, 0), m->major_slot(), *separating_basis(s[0], s[1])),
                                  "lone-minor strategy");
        return out;
    }

    auto designated_slot = [&](const PatternMatch &pm) {
        return out.case_name == "(4,2;2+3)" ? pm.minor_slot() : pm.major_slot();
    };
    int designated = designated_slot(*m);
    for (const auto &pm : all_matches(ts, *m->pattern)) {
        for (Basis b : {Basis::X, Basis::Z}) {
            auto cc = coarse_classes(ts, designated_slot(pm), b);
            if (cc && coarse_obstruction(ts, *cc).empty()) {
                out.tree = strategy_S(ts, *cc);
                return out;
            }
        }
    }

    // Report the first 3/2 split that was blocked, trying the other slot as well.
    std::optional<CoarseClasses> reported;
    for (int slot : {designated, other_slot(designated)}) {
        for (Basis b : {Basis::X, Basis::Z}) {
            auto cc = coarse_classes(ts, slot, b);
            if (!reported && cc && cc->big.size() == 3 && !coarse_obstruction(ts, *cc).empty()) {
                reported = cc;
            }
        }
    }
    if (reported) {
        out.reason = coarse_obstruction(ts, *reported);
        out.obstruction = sweep_obstruction(game, reported->split_slot, reported->split_basis);
    } else {
        auto cc = coarse_classes(ts, designated, Basis::X);
        out.reason = cc ? coarse_obstruction(ts, *cc) : "no coarse split of the designated halves";
        out.obstruction = sweep_obstruction(game, designated, Basis::X);
    }
    return out;
}

ScriptOutcome qqmark::n6_strategy(const TargetSet &ts) {
    if (ts.size() != 6) {
        throw ArgumentError("the six-state strategy needs 6 targets, got " + std::to_string(ts.size()));
    }
    ScriptOutcome out;
    std::optional<PatternMatch> m;
    for (const auto &p : six_state_patterns()) {
        if ((m = match_pattern(ts, p))) {
            break;
        }
    }
    if (!m) {
        out.reason = "outside catalog";
        return out;
    }
    out.case_name = m->pattern->name;
    MarkingGame game(ts);
    out.tree = build_or_throw(
        game, sweep_deduce_swap_policy(m->minor_slot(), *separating_basis(m->second[0], m->second[1]), false),
        "six-state strategy");
    return out;
}

SevenStateReport qqmark::n7_attempt(const TargetSet &ts) {
    std::optional<PatternMatch> m;
    if (ts.size() == 7) {
        m = match_pattern(ts, seven_state_patterns().front());
    }
    if (!m) {
        throw ArgumentError("the seven-state attempt needs the (4,2;3+4) shape, got " + ts.str());
    }
    MarkingGame game(ts);
    int minor = m->minor_slot();
    Basis basis = *separating_basis(m->second[0], m->second[1]);
    BuildResult r = build_from_policy(game, sweep_deduce_swap_policy(minor, basis, true), game.initial());

    std::map<int, SevenStateBranch> branches;
    for (size_t t = 0; t < ts.size(); t++) {
        SevenStateBranch b;
        b.untouched_target = static_cast<int>(t);
        b.untouched_name = letter_name(*m, b.untouched_target);
        int same_class = 0;
        for (size_t u = 0; u < ts.size(); u++) {
            same_class += ts[u].half(minor).bit(basis) == ts[t].half(minor).bit(basis);
        }
        int left_same = same_class - 1;
        int left_other = static_cast<int>(ts.size()) - same_class;
        if (std::max(left_same, left_other) >= 4) {
            b.obstruction = "three unresolved Bell states remain in C4 after the class sweep";
        } else if (left_same == 3 && left_other == 3) {
            b.obstruction = "two three-member classes C3, C3' with no discrimination resource";
        } else {
            b.obstruction = "classes of sizes " + std::to_string(left_same) + " and " + std::to_string(left_other);
        }
        branches[b.untouched_target] = b;
    }
    int last = game.n() - 1;
    for (const auto &k : r.stuck) {
        auto t = game.identified_target(k, last);
        if (!t) {
            throw std::logic_error("seven-state attempt stopped before the last system was resolved");
        }
        branches[*t].failed_states.push_back(k);
    }
    // Marked leaves per branch: walk the built policy once more per hypothesis.
    Policy p = sweep_deduce_swap_policy(minor, basis, true);
    for (size_t h = 0; h < game.hypothesis_count(); h++) {
        KnowledgeState k = game.initial();
        while (auto op = p(game, k)) {
            Observation obs = game.observe(h, *op);
            for (auto &cell : game.partition(k, *op)) {
                if (cell.observation == obs) {
                    k = std::move(cell.state);
                    break;
                }
            }
        }
        if (is_marked(k)) {
            branches[game.target_of(h, last)].marked_leaves++;
        }
    }

    SevenStateReport report;
    report.every_branch_fails = true;
    for (auto &[t, b] : branches) {
        b.all_failed_states_dead = std::all_of(b.failed_states.begin(), b.failed_states.end(),
                                               [&](const KnowledgeState &k) { return game.dead_pair_exists(k); });
        report.every_branch_fails &= !b.failed_states.empty() && b.all_failed_states_dead;
        report.branches.push_back(std::move(b));
    }
    return report;
}

ScriptOutcome qqmark::scripted_strategy(const TargetSet &ts) {
    switch (ts.size()) {
        case 4: {
            ScriptOutcome out;
            out.tree = n4_strategy(ts);
            out.case_name = catalog_lookup(ts).case_name;
            return out;
        }
        case 5:
            return n5_strategy(ts);
        case 6:
            return n6_strategy(ts);
        case 7:
            if (match_pattern(ts, seven_state_patterns().front())) {
                ScriptOutcome out;
                out.case_name = seven_state_patterns().front().name;
                SevenStateReport report = n7_attempt(ts);
                out.reason = report.every_branch_fails ? "every branch of the sweep-deduce-swap attempt ends in a dead pair"
                                                       : "the sweep-deduce-swap attempt fails";
                for (const auto &b : report.branches) {
                    if (!b.failed_states.empty()) {
                        out.obstruction = b.failed_states.front();
                        break;
                    }
                }
                return out;
            }
            break;
        default:
            break;
    }
    ScriptOutcome out;
    out.reason = "outside catalog";
    return out;
}
