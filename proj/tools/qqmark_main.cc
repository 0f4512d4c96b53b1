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

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qqmark/claims.h"
#include "qqmark/errors.h"
#include "qqmark/simulate.h"
#include "qqmark/solver.h"
#include "qqmark/strategies.h"

using namespace qqmark;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct BudgetFlags {
    uint64_t max_nodes = SearchBudget{}.max_nodes;
    double max_seconds = SearchBudget{}.max_seconds;

    void add_to(CLI::App *app) {
        app->add_option("--max-nodes", max_nodes, "Search node limit per set")->capture_default_str();
        app->add_option("--max-seconds", max_seconds, "Wall-clock limit per set")->capture_default_str();
    }
    SearchBudget budget() const {
        return {max_nodes, max_seconds};
    }
};

uint64_t default_seed() {
    if (const char *env = std::getenv("QQMARK_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception &) {
            throw ArgumentError(std::string("QQMARK_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

void write_output(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot open " + path + " for writing");
    }
    f << text;
}

int run_classify(int n, const std::optional<std::string> &signature, const BudgetFlags &budget, int jobs,
                 const std::string &out) {
    ClassifyOptions options;
    options.n = n;
    options.signature_filter = signature;
    options.budget = budget.budget();
    options.jobs = jobs;
    std::ofstream file;
    std::ostream *os = &std::cout;
    if (!out.empty() && out != "-") {
        file.open(out, std::ios::binary);
        if (!file) {
            throw ArgumentError("cannot open " + out + " for writing");
        }
        os = &file;
    }
    bool undecided = false;
    classify(options, [&](const ClassifyRow &row) {
        *os << row.to_json().dump() << "\n";
        os->flush();
        undecided |= row.verdict == VerdictKind::Undecided;
    });
    return undecided ? kBudget : kOk;
}

int run_solve(const std::string &set_text, const BudgetFlags &budget, bool assert_markable, bool symmetric_memo,
              const std::string &witness_out) {
    TargetSet ts = TargetSet::parse(set_text);
    SolverOptions options;
    options.symmetric_memo = symmetric_memo;
    Verdict v = decide_markable(ts, budget.budget(), options);
    nlohmann::json j;
    j["set"] = ts.str();
    j["signature"] = case_signature(ts).str();
    j["verdict"] = verdict_name(v.kind);
    j["witness"] = v.witness ? v.witness->to_json() : nlohmann::json(nullptr);
    j["stats"] = v.stats.to_json();
    j["stats"].erase("elapsed_seconds");
    std::cout << j.dump(2) << "\n";
    if (v.witness && !witness_out.empty()) {
        write_output(witness_out, v.witness->to_json().dump(2) + "\n");
    }
    switch (v.kind) {
        case VerdictKind::Markable:
            return kOk;
        case VerdictKind::Unmarkable:
            return assert_markable ? kMismatch : kOk;
        case VerdictKind::Undecided:
            return kBudget;
    }
    return kOk;
}

int run_simulate(const std::string &set_text, const std::string &hidden_text, const std::string &strategy,
                 std::optional<uint64_t> seed, const std::string &trace) {
    TargetSet ts = TargetSet::parse(set_text);
    MarkingGame game(ts);
    Hypothesis hidden = Hypothesis::parse(hidden_text, game.n());
    StrategyTree tree;
    if (strategy == "scripted" || strategy == "paper") {
        ScriptOutcome s = scripted_strategy(ts);
        if (!s.tree) {
            std::cerr << "no scripted strategy for {" << ts.str() << "}: " << s.reason << "\n";
            return kMismatch;
        }
        tree = *s.tree;
    } else {
        std::ifstream f(strategy);
        if (!f) {
            throw ArgumentError("cannot read strategy file " + strategy);
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(f);
        } catch (const nlohmann::json::parse_error &e) {
            throw ParseError(std::string("strategy file is not JSON: ") + e.what(), e.byte);
        }
        tree = StrategyTree::from_json(j);
    }
    SimulationResult r = simulate(game, hidden, tree, seed ? *seed : default_seed());
    if (trace == "json") {
        std::cout << trace_json(r).dump(2) << "\n";
    } else {
        std::cout << trace_text(r);
    }
    return r.success ? kOk : kMismatch;
}

int run_verify(const std::vector<int> &ns, const BudgetFlags &budget, int jobs) {
    ClaimOptions options;
    options.budget = budget.budget();
    options.jobs = jobs;
    bool ok = true;
    for (int n : ns) {
        std::cout << "n = " << n << "\n";
        auto results = check_claims(n, options);
        std::cout << render_claims(results);
        std::cout.flush();
        for (const auto &r : results) {
            ok &= r.pass;
        }
    }
    std::cout << (ok ? "all claims hold" : "some claims do not hold") << "\n";
    return ok ? kOk : kMismatch;
}

int run_orbit(const std::string &set_text) {
    TargetSet ts = TargetSet::parse(set_text);
    auto members = orbit(ts);
    std::cout << "canonical: " << canonical_form(ts).str() << "\n";
    std::cout << "signature: " << case_signature(ts).str() << "\n";
    std::cout << "orbit size: " << members.size() << "\n";
    for (const auto &m : members) {
        std::cout << m.str() << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Local marking of ququad-ququad maximally entangled states"};
    app.require_subcommand(1);

    BudgetFlags budget;
    int n = 0;
    int jobs = 1;
    std::optional<std::string> signature;
    std::string out, set_text, witness_out, hidden, strategy = "scripted", trace = "text";
    std::optional<uint64_t> seed;
    bool assert_markable = false, symmetric_memo = false;
    std::vector<int> verify_ns;

    auto *classify_cmd = app.add_subcommand("classify", "Classify every canonical set of a given size");
    classify_cmd->add_option("--n", n, "Set size")->required()->check(CLI::Range(1, 7));
    classify_cmd->add_option("--signature", signature, "Keep only sets of this case signature, e.g. (4,2)");
    budget.add_to(classify_cmd);
    classify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    classify_cmd->add_option("--out", out, "JSON-lines output file (default stdout)");

    auto *solve_cmd = app.add_subcommand("solve", "Decide markability of one set");
    solve_cmd->add_option("--set", set_text, "Targets, e.g. 00.00,01.00")->required();
    budget.add_to(solve_cmd);
    solve_cmd->add_flag("--assert-markable", assert_markable, "Exit 1 when the set is unmarkable");
    solve_cmd->add_flag("--symmetric-memo", symmetric_memo, "Share memo entries across label symmetries");
    solve_cmd->add_option("--witness-out", witness_out, "Write the witness tree here");

    auto *sim_cmd = app.add_subcommand("simulate", "Play a strategy against a hidden assignment");
    sim_cmd->add_option("--set", set_text, "Targets")->required();
    sim_cmd->add_option("--hidden", hidden, "Target index held by each system, e.g. 2,0,1,3")->required();
    sim_cmd->add_option("--strategy", strategy, "'scripted' or a strategy JSON file")->capture_default_str();
    sim_cmd->add_option("--seed", seed, "Sampling seed (default QQMARK_SEED or 0)");
    sim_cmd->add_option("--trace", trace, "Trace format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    auto *verify_cmd = app.add_subcommand("verify-paper", "Check the catalogued markability results");
    verify_cmd->add_option("--n", verify_ns, "Set sizes to check (default 1..7)")->check(CLI::Range(1, 7));
    budget.add_to(verify_cmd);
    verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

    auto *orbit_cmd = app.add_subcommand("orbit", "List the symmetry orbit and canonical form of a set");
    orbit_cmd->add_option("--set", set_text, "Targets")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*classify_cmd) {
            return run_classify(n, signature, budget, jobs, out);
        }
        if (*solve_cmd) {
            return run_solve(set_text, budget, assert_markable, symmetric_memo, witness_out);
        }
        if (*sim_cmd) {
            return run_simulate(set_text, hidden, strategy, seed, trace);
        }
        if (*verify_cmd) {
            if (verify_ns.empty()) {
                verify_ns = {1, 2, 3, 4, 5, 6, 7};
            }
            return run_verify(verify_ns, budget, jobs);
        }
        if (*orbit_cmd) {
            return run_orbit(set_text);
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArgumentError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const MalformedStrategy &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
