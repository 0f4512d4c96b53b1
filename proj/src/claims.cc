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

#include "qqmark/claims.h"

#include <atomic>
#include <sstream>
#include <thread>

#include "qqmark/errors.h"
#include "qqmark/strategies.h"

using namespace qqmark;

namespace {

struct Instance {
    std::string name;
    TargetSet set;
};

template <typename F>
void parallel_for(size_t count, int jobs, F &&f) {
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < count; i = next++) {
            f(i);
        }
    };
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; t++) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto &t : threads) {
        t.join();
    }
}

bool tree_verifies(const TargetSet &ts, const std::optional<StrategyTree> &tree) {
    return tree && verify_strategy(ts, *tree).success;
}

std::array<BellLabel, 4> labels(std::initializer_list<const char *> text) {
    std::array<BellLabel, 4> out = BellLabel::all();
    size_t i = 0;
    for (const char *t : text) {
        out[i++] = BellLabel::parse(t);
    }
    return out;
}

std::string beyond_catalog(const std::string &name, const TargetSet &ts, const Verdict &v) {
    std::ostringstream s;
    s << "beyond catalog: " << name << " {" << ts.str() << "} is markable by exhaustive search (witness depth "
      << v.witness->depth() << ", " << v.witness->node_count() << " nodes, "
      << (verify_strategy(ts, *v.witness).success ? "verified" : "NOT verified") << ")";
    return s.str();
}

std::vector<Instance> markable_five_state() {
    return {
        {"(4,2;1+4)", letter_instance("aA aB bB cB dB")},
        {"(4,2;2+3)", letter_instance("aA aB bA cB dB")},
        {"(4,4;1+1+1+2) extra aB", letter_instance("aA bB cC dD aB")},
        {"(4,4;1+1+1+2) extra aC", letter_instance("aA bB cC dD aC")},
        {"(4,4;1+1+1+2) extra aD", letter_instance("aA bB cC dD aD")},
        {"(4,3;1+2+2) mixed pair", letter_instance("aA aC bB cA dB")},
        {"(3,3) square", letter_instance("aA aB bA bB cC")},
        {"(3,3) triple first, {b,c} outside D", letter_instance("aA aB aC bA cB", labels({"00", "01", "11", "10"}))},
        {"(4,3;1+2+2) doubled pair, {a,b} outside D", letter_instance("aA aB bC cA dB")},
        {"(3,3) chain, {b,c} outside D", letter_instance("aA aB bA bC cB", labels({"00", "01", "11", "10"}))},
    };
}

std::vector<Instance> unmarkable_five_state() {
    return {
        {"(4,3;1+1+3) separate pair", letter_instance("aA aB bC cC dC")},
        {"(4,3;1+1+3) joined pair", letter_instance("aA aC bB cC dC")},
        {"(3,3) star", letter_instance("aA bA cA cB cC")},
        {"(3,3) triple first, {b,c} in D", letter_instance("aA aB aC bA cB")},
        {"(4,3;1+2+2) doubled pair, {a,b} in D", letter_instance("aA aB bC cA dB", labels({"00", "11", "01", "10"}))},
        {"(3,3) chain, {b,c} in D", letter_instance("aA aB bA bC cB")},
    };
}

ClaimResult small_sets_markable(int n, const ClaimOptions &options) {
    ClaimResult r;
    r.claim = "every " + std::to_string(n) + "-state set is markable";
    ClassifyOptions co;
    co.n = n;
    co.budget = options.budget;
    co.jobs = options.jobs;
    auto rows = classify(co);
    size_t markable = 0;
    for (const auto &row : rows) {
        markable += row.verdict == VerdictKind::Markable;
    }
    r.pass = markable == rows.size();
    r.detail = std::to_string(markable) + "/" + std::to_string(rows.size()) + " canonical sets markable";
    return r;
}

std::vector<ClaimResult> four_state_claims(const ClaimOptions &options) {
    std::vector<TargetSet> sets = enumerate_sets(4);
    std::vector<char> solved(sets.size()), scripted(sets.size());
    parallel_for(sets.size(), options.jobs, [&](size_t i) {
        solved[i] = decide_markable(sets[i], options.budget).kind == VerdictKind::Markable;
        scripted[i] = verify_strategy(sets[i], n4_strategy(sets[i])).success;
    });
    auto summarize = [&](const std::vector<char> &ok, std::string claim, const char *what) {
        ClaimResult r;
        r.claim = std::move(claim);
        size_t good = std::count(ok.begin(), ok.end(), 1);
        r.pass = good == sets.size();
        r.detail = std::to_string(good) + "/" + std::to_string(sets.size()) + " sets " + what;
        for (size_t i = 0; i < sets.size() && r.pass == false; i++) {
            if (!ok[i]) {
                r.detail += "; first failure {" + sets[i].str() + "}";
                break;
            }
        }
        return r;
    };
    return {
        summarize(solved, "every four-state set is markable", "markable by exhaustive search"),
        summarize(scripted, "the scripted four-state strategy marks every four-state set", "with verified trees"),
    };
}

ClaimResult conditional_exactness(const std::string &pattern_name, int u, int v) {
    ClaimResult r;
    r.claim = pattern_name + " gets a scripted tree iff its pair condition holds for some reading";
    const Pattern &p = pattern_named(pattern_name);
    std::array<BellLabel, 4> first = BellLabel::all();
    size_t checked = 0, mismatches = 0;
    std::string first_mismatch;
    std::sort(first.begin(), first.end());
    do {
        std::array<BellLabel, 4> second = BellLabel::all();
        std::sort(second.begin(), second.end());
        do {
            for (bool swapped : {false, true}) {
                TargetSet ts = instantiate(p, first, second, swapped);
                bool expect = false;
                for (const auto &m : all_matches(ts, p)) {
                    expect |= !in_D(m.first[u], m.first[v]);
                }
                bool got = tree_verifies(ts, n5_strategy(ts).tree);
                checked++;
                if (expect != got) {
                    if (mismatches++ == 0) {
                        first_mismatch = "{" + ts.str() + "}";
                    }
                }
            }
        } while (std::next_permutation(second.begin(), second.end()));
    } while (std::next_permutation(first.begin(), first.end()));
    r.pass = mismatches == 0;
    r.detail = std::to_string(checked) + " label instantiations, " + std::to_string(mismatches) + " mismatches";
    if (mismatches) {
        r.detail += ", first " + first_mismatch;
    }
    return r;
}

std::vector<ClaimResult> five_state_claims(const ClaimOptions &options) {
    std::vector<ClaimResult> out;

    ClaimResult markable;
    markable.claim = "catalogued markable five-state shapes get verified scripted trees";
    markable.pass = true;
    size_t ok = 0;
    auto good = markable_five_state();
    for (const auto &inst : good) {
        if (tree_verifies(inst.set, n5_strategy(inst.set).tree)) {
            ok++;
        } else {
            markable.pass = false;
            markable.detail += "no verified tree for " + inst.name + "; ";
        }
    }
    markable.detail += std::to_string(ok) + "/" + std::to_string(good.size()) + " instances verified";
    out.push_back(std::move(markable));

    ClaimResult blocked;
    blocked.claim = "catalogued unmarkable five-state shapes stop the sweep strategy at a dead pair";
    blocked.pass = true;
    size_t dead = 0;
    auto bad = unmarkable_five_state();
    for (const auto &inst : bad) {
        ScriptOutcome s = n5_strategy(inst.set);
        MarkingGame game(inst.set);
        if (!s.tree && s.obstruction && game.dead_pair_exists(*s.obstruction)) {
            dead++;
        } else {
            blocked.pass = false;
            blocked.detail += inst.name + " not blocked; ";
        }
        Verdict v = decide_markable(inst.set, options.budget);
        if (v.kind == VerdictKind::Markable) {
            blocked.findings.push_back(beyond_catalog(inst.name, inst.set, v));
        } else {
            blocked.detail += inst.name + ": " + verdict_name(v.kind) + "; ";
        }
    }
    blocked.detail += std::to_string(dead) + "/" + std::to_string(bad.size()) + " instances blocked";
    out.push_back(std::move(blocked));

    out.push_back(conditional_exactness("(4,3;1+2+2) doubled pair", 0, 1));
    out.push_back(conditional_exactness("(3,3) triple first", 1, 2));
    out.push_back(conditional_exactness("(3,3) chain", 1, 2));

    ClaimResult agreement;
    agreement.claim = "exhaustive search marks every five-state set the scripted strategies mark";
    ClassifyOptions co;
    co.n = 5;
    co.budget = options.budget;
    co.jobs = options.jobs;
    size_t rows = 0, scripted = 0, undecided = 0, disagreements = 0;
    agreement.pass = true;
    for (const auto &row : classify(co)) {
        rows++;
        undecided += row.verdict == VerdictKind::Undecided;
        if (row.scripted == "success") {
            scripted++;
            if (row.verdict != VerdictKind::Markable) {
                agreement.pass = false;
                agreement.detail += "{" + row.set.str() + "} scripted but " + verdict_name(row.verdict) + "; ";
            }
        }
        if (row.agree && !*row.agree) {
            disagreements++;
            if (row.verdict == VerdictKind::Markable) {
                agreement.findings.push_back("beyond catalog: " + row.case_name + " {" + row.set.str() +
                                             "} is markable by exhaustive search (witness depth " +
                                             std::to_string(*row.witness_depth) + ")");
            }
        }
    }
    agreement.detail += std::to_string(rows) + " canonical sets, " + std::to_string(scripted) + " scripted, " +
                        std::to_string(undecided) + " undecided, " + std::to_string(disagreements) +
                        " differ from the catalogue";
    out.push_back(std::move(agreement));
    return out;
}

std::vector<ClaimResult> six_state_claims(const ClaimOptions &options) {
    ClaimResult r;
    r.claim = "(k,2;3+3) six-state shapes get verified scripted trees for k = 3 and 4";
    r.pass = true;
    for (const auto &inst : {Instance{"k=3", letter_instance("aA bA cA aB bB cB")},
                             Instance{"k=4", letter_instance("aA bA cA aB bB dB")}}) {
        bool tree_ok = tree_verifies(inst.set, n6_strategy(inst.set).tree);
        Verdict v = decide_markable(inst.set, options.budget);
        r.pass &= tree_ok && v.kind == VerdictKind::Markable;
        r.detail += inst.name + ": tree " + (tree_ok ? "verified" : "failed") + ", search " + verdict_name(v.kind) + "; ";
    }
    r.detail.resize(r.detail.size() - 2);
    return {r};
}

std::vector<ClaimResult> seven_state_claims(const ClaimOptions &options) {
    TargetSet ts = letter_instance("aA bA cA aB bB cB dB");
    std::vector<ClaimResult> out;

    ClaimResult attempt;
    attempt.claim = "the sweep-deduce-swap attempt on the (4,2;3+4) shape fails in every branch";
    SevenStateReport report = n7_attempt(ts);
    attempt.pass = report.every_branch_fails;
    for (const auto &b : report.branches) {
        attempt.detail += "untouched " + b.untouched_name + ": " + std::to_string(b.failed_states.size()) +
                          " failed states" + (b.all_failed_states_dead ? " (all dead)" : "") + "; ";
    }
    attempt.detail.resize(attempt.detail.size() - 2);
    out.push_back(std::move(attempt));

    ClaimResult search;
    search.claim = "exhaustive search on the (4,2;3+4) shape";
    Verdict v = decide_markable(ts, options.budget);
    search.detail = verdict_name(v.kind) + " after " + std::to_string(v.stats.nodes_expanded) + " nodes";
    search.pass = true;
    if (v.kind == VerdictKind::Markable) {
        search.pass = verify_strategy(ts, *v.witness).success;
        search.findings.push_back(beyond_catalog("(4,2;3+4)", ts, v));
    }
    out.push_back(std::move(search));
    return out;
}

}  // namespace

TargetSet qqmark::letter_instance(const std::string &pattern, const std::array<BellLabel, 4> &first,
                                  const std::array<BellLabel, 4> &second) {
    return instantiate(Pattern::parse("", pattern), first, second);
}

std::vector<ClaimResult> qqmark::check_claims(int n, const ClaimOptions &options) {
    switch (n) {
        case 1:
        case 2:
        case 3:
            return {small_sets_markable(n, options)};
        case 4:
            return four_state_claims(options);
        case 5:
            return five_state_claims(options);
        case 6:
            return six_state_claims(options);
        case 7:
            return seven_state_claims(options);
        default:
            throw ArgumentError("claims are catalogued for 1..7 targets, got " + std::to_string(n));
    }
}

std::string qqmark::render_claims(const std::vector<ClaimResult> &results) {
    std::ostringstream s;
    for (const auto &r : results) {
        s << (r.pass ? "PASS" : "FAIL") << "  " << r.claim << ": " << r.detail << "\n";
        for (const auto &f : r.findings) {
            s << "      FINDING " << f << "\n";
        }
    }
    return s.str();
}
