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

#include "qqmark/solver.h"

#include <random>

#include "gtest/gtest.h"
#include "qqmark/errors.h"
#include "qqmark/strategies.h"

using namespace qqmark;

namespace {

TargetSet S(const char *text) {
    return TargetSet::parse(text);
}

TargetSet random_set(std::mt19937_64 &rng, int n) {
    std::vector<unsigned> codes(16);
    for (unsigned c = 0; c < 16; c++) {
        codes[c] = c;
    }
    std::shuffle(codes.begin(), codes.end(), rng);
    std::vector<QuquadLabel> labels;
    for (int k = 0; k < n; k++) {
        labels.push_back(QuquadLabel::from_code(codes[k]));
    }
    return TargetSet(labels);
}

SolverOptions unpruned() {
    SolverOptions o;
    o.prune_uninformative = false;
    o.capacity_bound = false;
    o.merge_symmetric_operations = false;
    return o;
}

const char *kStarBothSlots = "00.00,00.01,00.10,01.00,10.00";

}  // namespace

TEST(solver, singleton_is_a_bare_mark) {
    Verdict v = decide_markable(S("01.11"));
    ASSERT_EQ(v.kind, VerdictKind::Markable);
    ASSERT_TRUE(v.witness->is_mark());
    ASSERT_EQ(v.witness->marked(), Hypothesis::identity(1));
}

TEST(solver, size_limits) {
    std::vector<QuquadLabel> eight;
    for (unsigned c = 0; c < 8; c++) {
        eight.push_back(QuquadLabel::from_code(c));
    }
    ASSERT_THROW(decide_markable(TargetSet(eight)), ArgumentError);
    ClassifyOptions o;
    o.n = 8;
    ASSERT_THROW(classify(o), ArgumentError);
}

TEST(solver, every_small_set_is_markable) {
    for (int n = 1; n <= 4; n++) {
        for_each_set(n, [](const TargetSet &ts) {
            Verdict v = decide_markable(ts);
            ASSERT_EQ(v.kind, VerdictKind::Markable) << ts.str();
            ASSERT_TRUE(verify_strategy(ts, *v.witness).success) << ts.str();
        });
    }
}

TEST(solver, first_operation_wins) {
    // LPX on the first system's first half already splits the four targets evenly.
    Verdict v = decide_markable(S("00.00,01.00,10.00,11.00"));
    ASSERT_EQ(v.kind, VerdictKind::Markable);
    ASSERT_EQ(v.witness->operation().str(), "LPX(0:1)");
    ASSERT_TRUE(verify_strategy(S("00.00,01.00,10.00,11.00"), *v.witness).success);
}

TEST(solver, separate_pair_shape_is_recorded) {
    TargetSet ts = S("00.00,00.01,01.10,10.10,11.10");
    Verdict v = decide_markable(ts);
    ASSERT_NE(v.kind, VerdictKind::Undecided);
    if (v.kind == VerdictKind::Markable) {
        ASSERT_TRUE(verify_strategy(ts, *v.witness).success);
    }
    ASSERT_EQ(decide_markable(ts, {}, unpruned()).kind, v.kind);
}

TEST(solver, unmarkable_five_state_set) {
    TargetSet ts = S(kStarBothSlots);
    Verdict v = decide_markable(ts);
    ASSERT_EQ(v.kind, VerdictKind::Unmarkable);
    ASSERT_FALSE(v.witness.has_value());
    ASSERT_GT(v.stats.dead_pair_prunes, 0u);
    ASSERT_EQ(decide_markable(ts, {}, unpruned()).kind, VerdictKind::Unmarkable);
    SolverOptions sym;
    sym.symmetric_memo = true;
    ASSERT_EQ(decide_markable(ts, {}, sym).kind, VerdictKind::Unmarkable);
}

TEST(solver, budget_gives_undecided) {
    SearchBudget tiny;
    tiny.max_nodes = 3;
    Verdict v = decide_markable(S("00.00,00.01,01.10,10.10,11.10"), tiny);
    ASSERT_EQ(v.kind, VerdictKind::Undecided);
    ASSERT_FALSE(v.witness.has_value());
    ASSERT_LE(v.stats.nodes_expanded, 4u);
}

TEST(solver, memo_keys) {
    TargetSet ts = S("00.00,00.01,01.10,10.10");
    MarkingGame game(ts);
    KnowledgeState k = game.initial();
    ASSERT_EQ(memo_key(game, k), memo_key(game, k));
    KnowledgeState fewer = k;
    fewer.hypotheses.reset(3);
    ASSERT_NE(memo_key(game, k), memo_key(game, fewer));
    KnowledgeState used = game.partition(k, Operation::lpx({0, 1}))[0].state;
    KnowledgeState other = used;
    other.intact = k.intact & ~Operation::lpx({1, 1}).consumed_mask();
    ASSERT_NE(memo_key(game, used), memo_key(game, other));

    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; trial++) {
        TargetSet a = random_set(rng, 3 + trial % 3);
        const auto &g = all_symmetries()[rng() % 64];
        TargetSet b = apply_symmetry(g, a);
        ASSERT_EQ(memo_key(a, initial_knowledge(a.size()), true), memo_key(b, initial_knowledge(b.size()), true));
    }
}

TEST(solver, symmetry_invariance) {
    std::mt19937_64 rng(77);
    std::vector<TargetSet> sets{S(kStarBothSlots)};
    for (int k = 0; k < 60; k++) {
        sets.push_back(random_set(rng, 3 + k % 3));
    }
    for (const auto &ts : sets) {
        VerdictKind v = decide_markable(ts).kind;
        for (int g = 0; g < 3; g++) {
            TargetSet img = apply_symmetry(all_symmetries()[rng() % 64], ts);
            ASSERT_EQ(decide_markable(img).kind, v) << ts.str() << " -> " << img.str();
        }
    }
}

TEST(solver, pruning_does_not_change_verdicts) {
    for (int n = 1; n <= 3; n++) {
        for_each_set(n, [](const TargetSet &ts) {
            ASSERT_EQ(decide_markable(ts).kind, decide_markable(ts, {}, unpruned()).kind) << ts.str();
        });
    }
    std::mt19937_64 rng(3);
    SolverOptions sym;
    sym.symmetric_memo = true;
    for (int k = 0; k < 20; k++) {
        TargetSet ts = random_set(rng, 4);
        VerdictKind v = decide_markable(ts).kind;
        ASSERT_EQ(v, decide_markable(ts, {}, unpruned()).kind) << ts.str();
        ASSERT_EQ(v, decide_markable(ts, {}, sym).kind) << ts.str();
    }
}

TEST(solver, deterministic_witness) {
    TargetSet ts = S("00.00,00.01,01.00,10.01,11.01");
    Verdict a = decide_markable(ts);
    Verdict b = decide_markable(ts);
    ASSERT_EQ(a.kind, VerdictKind::Markable);
    ASSERT_EQ(*a.witness, *b.witness);
    ASSERT_EQ(a.stats.nodes_expanded, b.stats.nodes_expanded);
}

TEST(solver, scripted_trees_agree_with_search) {
    for (const auto &cs : enumerate_canonical_sets(4)) {
        ASSERT_EQ(scripted_outcome(cs.set), "success") << cs.set.str();
    }
    ASSERT_EQ(scripted_outcome(S("00.00,01.00,10.00,10.01,10.10")), "failure: duplicate intact halves in C2");
    ASSERT_EQ(scripted_outcome(S("00.00,01.01")), "none: outside catalog");
}

TEST(solver, classify_four) {
    ClassifyOptions o;
    o.n = 4;
    auto rows = classify(o);
    size_t total = 0;
    for (const auto &r : rows) {
        total += r.orbit_size;
        ASSERT_EQ(r.verdict, VerdictKind::Markable);
        ASSERT_EQ(r.scripted, "success");
        ASSERT_EQ(r.agree, true);
    }
    ASSERT_EQ(total, 1820u);
    o.jobs = 3;
    std::vector<std::string> streamed;
    auto again = classify(o, [&](const ClassifyRow &r) { streamed.push_back(r.to_json().dump()); });
    ASSERT_EQ(again.size(), rows.size());
    for (size_t k = 0; k < rows.size(); k++) {
        ASSERT_EQ(rows[k].to_json().dump(), streamed[k]);
    }
}

TEST(solver, classify_row_fields) {
    ClassifyOptions o;
    o.n = 2;
    auto rows = classify(o);
    ASSERT_FALSE(rows.empty());
    for (const auto &r : rows) {
        ASSERT_EQ(r.verdict, VerdictKind::Markable);
    }
    nlohmann::json j = rows.front().to_json();
    for (const char *field : {"set", "signature", "verdict", "witness_depth", "scripted", "paper_expectation",
                              "agree", "stats", "orbit_size", "case"}) {
        ASSERT_TRUE(j.contains(field)) << field;
    }
    ASSERT_FALSE(j["stats"].contains("elapsed_seconds"));
}

TEST(solver, classify_five_lone_and_split_minor) {
    ClassifyOptions o;
    o.n = 5;
    o.signature_filter = "(4,2)";
    auto rows = classify(o);
    ASSERT_FALSE(rows.empty());
    for (const auto &r : rows) {
        ASSERT_EQ(r.signature.short_str(), "(4,2)");
        ASSERT_EQ(r.verdict, VerdictKind::Markable);
        if (r.signature.profile2 == std::vector<int>{1, 4} || r.signature.profile2 == std::vector<int>{2, 3}) {
            ASSERT_EQ(r.scripted, "success") << r.set.str();
        }
    }
}
