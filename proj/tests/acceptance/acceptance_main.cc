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

// Acceptance gate. Prints one PASS/FAIL line per criterion; `acceptance N` runs only
// criterion N. Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qqmark/claims.h"
#include "qqmark/simulate.h"
#include "qqmark/solver.h"
#include "qqmark/strategies.h"

using namespace qqmark;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    std::vector<std::string> notes;
};

TargetSet S(const char *text) {
    return TargetSet::parse(text);
}

std::array<BellLabel, 4> labels(const char *a, const char *b, const char *c, const char *d) {
    return {BellLabel::parse(a), BellLabel::parse(b), BellLabel::parse(c), BellLabel::parse(d)};
}

TargetSet random_set(std::mt19937_64 &rng, int n) {
    std::vector<unsigned> codes(16);
    for (unsigned c = 0; c < 16; c++) {
        codes[c] = c;
    }
    std::shuffle(codes.begin(), codes.end(), rng);
    std::vector<QuquadLabel> out;
    for (int k = 0; k < n; k++) {
        out.push_back(QuquadLabel::from_code(codes[k]));
    }
    return TargetSet(out);
}

std::string verdict_note(const std::string &name, const TargetSet &ts, const Verdict &v) {
    std::string s = name + " {" + ts.str() + "}: search " + verdict_name(v.kind) + " (" +
                    std::to_string(v.stats.nodes_expanded) + " nodes)";
    if (v.kind == VerdictKind::Markable) {
        s += ", witness depth " + std::to_string(v.witness->depth()) + " " +
             (verify_strategy(ts, *v.witness).success ? "verified" : "NOT VERIFIED") +
             "; beyond the catalogue, which expects no perfect marking";
    }
    return s;
}

// Tree verified over every hypothesis, then simulated with `seeds` seeds per hypothesis.
size_t tree_failures(const TargetSet &ts, const std::optional<StrategyTree> &tree, int seeds) {
    if (!tree) {
        return 1;
    }
    MarkingGame game(ts);
    if (!verify_strategy(game, *tree).success) {
        return 1;
    }
    size_t failures = 0;
    for (size_t h = 0; h < game.hypothesis_count(); h++) {
        for (int seed = 0; seed < seeds; seed++) {
            failures += !simulate(game, game.hypothesis(h), *tree, 1000003ULL * h + seed).success;
        }
    }
    return failures;
}

Outcome four_state_theorem() {
    Outcome o;
    size_t markable = 0, verified = 0, witnesses = 0, total = 0;
    for_each_set(4, [&](const TargetSet &ts) {
        total++;
        Verdict v = decide_markable(ts);
        if (v.kind == VerdictKind::Markable) {
            markable++;
            witnesses += verify_strategy(ts, *v.witness).success;
        }
        verified += verify_strategy(ts, n4_strategy(ts)).success;
    });
    o.pass = total == 1820 && markable == total && verified == total && witnesses == total;
    o.detail = std::to_string(markable) + "/" + std::to_string(total) + " markable by search (" +
               std::to_string(witnesses) + " witnesses verified), " + std::to_string(verified) + "/" +
               std::to_string(total) + " scripted trees verified";
    return o;
}

Outcome five_state_markable() {
    struct Inst {
        const char *name;
        TargetSet set;
    };
    std::vector<Inst> insts{
        {"(4,2;1+4)", letter_instance("aA aB bB cB dB")},
        {"(4,2;2+3)", S("00.00,00.01,01.00,10.01,11.01")},
        {"(4,4;1+1+1+2) X=beta", letter_instance("aA bB cC dD aB")},
        {"(4,4;1+1+1+2) X=gamma", letter_instance("aA bB cC dD aC")},
        {"(4,4;1+1+1+2) X=delta", letter_instance("aA bB cC dD aD")},
        {"(4,3;1+2+2) mixed pair", letter_instance("aA aC bB cA dB")},
        {"(3,3) square", letter_instance("aA aB bA bB cC")},
        {"(3,3) triple first, {b,c} not in D", letter_instance("aA aB aC bA cB", labels("00", "01", "11", "10"))},
        {"(4,3;1+2+2) doubled pair, {a,b} not in D", letter_instance("aA aB bC cA dB")},
        {"(3,3) chain, {b,c} not in D", letter_instance("aA aB bA bC cB", labels("00", "01", "11", "10"))},
    };
    Outcome o;
    size_t failures = 0, runs = 0;
    for (const auto &inst : insts) {
        ScriptOutcome s = n5_strategy(inst.set);
        size_t f = tree_failures(inst.set, s.tree, 100);
        failures += f;
        runs += 120 * 100;
        if (f) {
            o.notes.push_back(std::string(inst.name) + ": " + std::to_string(f) + " failures");
        }
    }
    o.pass = failures == 0;
    o.detail = std::to_string(insts.size()) + " instances, 120 hypotheses x 100 seeds each, " +
               std::to_string(failures) + " failures in " + std::to_string(runs) + " runs";
    return o;
}

Outcome five_state_unmarkable() {
    struct Inst {
        const char *name;
        TargetSet set;
    };
    std::vector<Inst> insts{
        {"(4,3;1+1+3) separate pair", S("00.00,00.01,01.10,10.10,11.10")},
        {"(4,3;1+1+3) joined pair", letter_instance("aA aC bB cC dC")},
        {"(3,3) star", S("00.00,01.00,10.00,10.01,10.10")},
        {"(4,3;1+2+2) doubled pair, {a,b} in D", letter_instance("aA aB bC cA dB", labels("00", "11", "01", "10"))},
        {"(3,3) triple first, {b,c} in D", letter_instance("aA aB aC bA cB")},
        {"(3,3) chain, {b,c} in D", letter_instance("aA aB bA bC cB")},
    };
    Outcome o;
    size_t blocked = 0;
    for (const auto &inst : insts) {
        ScriptOutcome s = n5_strategy(inst.set);
        bool dead = !s.tree && s.obstruction && MarkingGame(inst.set).dead_pair_exists(*s.obstruction);
        blocked += dead;
        if (!dead) {
            o.notes.push_back(std::string(inst.name) + ": no dead-pair obstruction");
        }
        o.notes.push_back(verdict_note(inst.name, inst.set, decide_markable(inst.set)));
    }
    o.pass = blocked == insts.size();
    o.detail = std::to_string(blocked) + "/" + std::to_string(insts.size()) +
               " instances rejected by the sweep strategy with a dead-pair obstruction";
    return o;
}

Outcome six_state() {
    Outcome o;
    size_t failures = 0;
    for (const char *set : {"00.00,01.00,10.00,00.01,01.01,10.01", "00.00,01.00,10.00,00.01,01.01,11.01"}) {
        TargetSet ts = S(set);
        ScriptOutcome s = n6_strategy(ts);
        bool ok = s.tree && MarkingGame(ts).hypothesis_count() == 720 && verify_strategy(ts, *s.tree).success;
        failures += !ok;
    }
    o.pass = failures == 0;
    o.detail = "k=3 and k=4 instances, 720 hypotheses each, " + std::to_string(failures) + " failures";
    return o;
}

Outcome seven_state() {
    Outcome o;
    TargetSet ts = S("00.00,01.00,10.00,00.01,01.01,10.01,11.01");
    SevenStateReport report = n7_attempt(ts);
    std::ostringstream d;
    d << "attempt: " << report.branches.size() << " branches, "
      << (report.every_branch_fails ? "every branch ends in dead pairs" : "some branch does not end in a dead pair");
    for (const auto &b : report.branches) {
        o.notes.push_back("untouched " + b.untouched_name + ": " + b.obstruction + ", " +
                          std::to_string(b.failed_states.size()) + " failed states" +
                          (b.all_failed_states_dead ? ", all dead" : ""));
    }
    SearchBudget budget;
    budget.max_nodes = 100'000'000;
    budget.max_seconds = 12 * 3600.0;
    Verdict v = decide_markable(ts, budget);
    d << "; search verdict " << verdict_name(v.kind) << " after " << v.stats.nodes_expanded << " nodes";
    bool expected_verdict = v.kind == VerdictKind::Unmarkable || v.kind == VerdictKind::Undecided;
    if (!expected_verdict) {
        d << ", expected unmarkable or undecided";
    }
    if (v.witness) {
        MarkingGame game(ts);
        VerifyReport r = verify_strategy(game, *v.witness);
        o.notes.push_back("witness: depth " + std::to_string(v.witness->depth()) + ", " +
                          std::to_string(v.witness->node_count()) + " nodes, " +
                          (r.success ? "marks all " + std::to_string(game.hypothesis_count()) + " hypotheses"
                                     : "does not verify: " + r.detail));
    }
    o.pass = report.every_branch_fails && expected_verdict;
    o.detail = d.str();
    return o;
}

Outcome micro_oracle() {
    Outcome o;
    size_t bad_entries = 0, bad_samples = 0;
    Rng rng(2026);
    for (auto a : BellLabel::all()) {
        for (auto b : BellLabel::all()) {
            auto dist = oracle_swap_distribution(a, b);
            BellLabel s = swap_observation(a, b);
            for (auto x : BellLabel::all()) {
                for (auto y : BellLabel::all()) {
                    auto it = dist.find({x, y});
                    double p = it == dist.end() ? 0.0 : it->second;
                    bad_entries += std::abs(p - ((x ^ y) == s ? 0.25 : 0.0)) > 1e-12;
                }
            }
            for (int k = 0; k < 64; k++) {
                SwapOutcome out = sample_swap(a, b, rng);
                auto it = dist.find({out.alice, out.bob});
                bad_samples += it == dist.end() || std::abs(it->second - 0.25) > 1e-12;
            }
        }
    }
    size_t lpm_bad = 0;
    for (auto l : BellLabel::all()) {
        for (Basis basis : {Basis::X, Basis::Z}) {
            for (int k = 0; k < 10000; k++) {
                LpmOutcome out = sample_lpm(l, basis, rng);
                lpm_bad += (out.alice * out.bob) != stabilizer_sign(l, basis);
            }
        }
    }
    o.pass = bad_entries == 0 && bad_samples == 0 && lpm_bad == 0;
    o.detail = "swap oracle: " + std::to_string(256 - bad_entries) + "/256 entries agree, " +
               std::to_string(bad_samples) + " sampled swaps off support; LPM product law: " +
               std::to_string(lpm_bad) + " violations in 8 x 10^4 samples";
    return o;
}

Outcome property_suites() {
    Outcome o;
    std::mt19937_64 rng(7);
    size_t violations = 0;

    // Partition well-formedness along random play.
    size_t partitions = 0;
    auto sets4 = enumerate_sets(4);
    for (int trial = 0; trial < 500; trial++) {
        TargetSet ts = random_set(rng, 2 + trial % 4);
        MarkingGame game(ts);
        KnowledgeState k = game.initial();
        while (k.intact && !is_marked(k)) {
            auto ops = legal_operations(k);
            Operation op = ops[rng() % ops.size()];
            auto cells = game.partition(k, op);
            HypothesisSet un(k.hypotheses.universe());
            for (const auto &c : cells) {
                violations += c.state.hypotheses.empty() || un.intersects(c.state.hypotheses) ||
                              c.state.intact != (k.intact & ~op.consumed_mask());
                un |= c.state.hypotheses;
            }
            violations += !(un == k.hypotheses);
            partitions++;
            k = cells[rng() % cells.size()].state;
        }
    }
    o.notes.push_back("partition well-formedness: " + std::to_string(partitions) + " partitions");

    // Conservation on sampled swaps.
    Rng srng(11);
    for (int k = 0; k < 10000; k++) {
        BellLabel a = BellLabel::from_code(srng() & 3), b = BellLabel::from_code(srng() & 3);
        SwapOutcome s = sample_swap(a, b, srng);
        violations += (s.alice ^ s.bob) != (a ^ b);
    }
    o.notes.push_back("swap conservation: 10^4 samples");

    // Dead-pair soundness over random operation sequences.
    size_t sequences = 0, with_dead = 0;
    for (int trial = 0; trial < 10000; trial++) {
        TargetSet ts = random_set(rng, 3 + trial % 3);
        MarkingGame game(ts);
        KnowledgeState k = game.initial();
        std::optional<std::pair<size_t, size_t>> pair;
        while (k.intact) {
            if (!pair) {
                pair = game.find_dead_pair(k);
                with_dead += pair.has_value();
            }
            auto ops = legal_operations(k);
            Operation op = ops[rng() % ops.size()];
            auto cells = game.partition(k, op);
            if (pair) {
                bool together = false;
                for (auto &c : cells) {
                    if (c.state.hypotheses.test(pair->first)) {
                        together = c.state.hypotheses.test(pair->second);
                        k = std::move(c.state);
                    }
                }
                violations += !together || is_marked(k);
            } else {
                k = cells[rng() % cells.size()].state;
            }
        }
        sequences++;
    }
    o.notes.push_back("dead-pair soundness: " + std::to_string(sequences) + " sequences, " +
                      std::to_string(with_dead) + " reached a dead pair");

    // Symmetry invariance of verdicts.
    for (int trial = 0; trial < 200; trial++) {
        TargetSet ts = random_set(rng, 3 + trial % 3);
        TargetSet img = apply_symmetry(all_symmetries()[rng() % 64], ts);
        violations += decide_markable(ts).kind != decide_markable(img).kind;
    }
    o.notes.push_back("symmetry invariance: 200 random sets of sizes 3-5");

    // Pruned vs unpruned search.
    SolverOptions plain;
    plain.prune_uninformative = false;
    plain.capacity_bound = false;
    plain.merge_symmetric_operations = false;
    size_t compared = 0;
    for (int n = 1; n <= 3; n++) {
        for_each_set(n, [&](const TargetSet &ts) {
            violations += decide_markable(ts).kind != decide_markable(ts, {}, plain).kind;
            compared++;
        });
    }
    for (int trial = 0; trial < 50; trial++) {
        const TargetSet &ts = sets4[rng() % sets4.size()];
        Verdict a = decide_markable(ts);
        Verdict b = decide_markable(ts, {}, plain);
        violations += a.kind != b.kind || b.kind == VerdictKind::Undecided;
        compared++;
    }
    o.notes.push_back("pruned vs unpruned: " + std::to_string(compared) + " sets");

    o.pass = violations == 0;
    o.detail = std::to_string(violations) + " violations";
    return o;
}

}  // namespace

int main(int argc, char **argv) {
    struct Criterion {
        const char *name;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> criteria{
        {"four-state theorem", four_state_theorem},
        {"five-state markable catalogue", five_state_markable},
        {"five-state unmarkable catalogue", five_state_unmarkable},
        {"six-state case", six_state},
        {"seven-state case", seven_state},
        {"micro-oracle", micro_oracle},
        {"property suites", property_suites},
    };
    std::vector<int> selected;
    for (int a = 1; a < argc; a++) {
        int k = std::atoi(argv[a]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::cerr << "unknown criterion " << argv[a] << "\n";
            return 2;
        }
        selected.push_back(k);
    }
    if (selected.empty()) {
        for (size_t k = 1; k <= criteria.size(); k++) {
            selected.push_back(static_cast<int>(k));
        }
    }
    bool all = true;
    for (int k : selected) {
        auto start = std::chrono::steady_clock::now();
        Outcome o = criteria[k - 1].run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << k << "] " << criteria[k - 1].name << ": " << o.detail
                  << " (" << std::fixed << std::setprecision(1) << secs << " s)\n";
        for (const auto &n : o.notes) {
            std::cout << "       " << n << "\n";
        }
        std::cout.flush();
    }
    return all ? 0 : 1;
}
