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

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cctype>
#include <cmath>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "qqmark/errors.h"
#include "qqmark/strategies.h"

using namespace qqmark;

nlohmann::json SearchStats::to_json() const {
    return {{"nodes_expanded", nodes_expanded},     {"memo_hits", memo_hits},
            {"dead_pair_prunes", dead_pair_prunes}, {"capacity_prunes", capacity_prunes},
            {"max_depth", max_depth},               {"elapsed_seconds", elapsed_seconds}};
}

std::string qqmark::verdict_name(VerdictKind v) {
    switch (v) {
        case VerdictKind::Markable:
            return "markable";
        case VerdictKind::Unmarkable:
            return "unmarkable";
        default:
            return "undecided";
    }
}

namespace {

void append_u16(std::string &s, uint32_t v) {
    s.push_back(static_cast<char>(v & 0xFF));
    s.push_back(static_cast<char>(v >> 8 & 0xFF));
}

void append_u32(std::string &s, uint32_t v) {
    append_u16(s, v & 0xFFFF);
    append_u16(s, v >> 16);
}

std::string exact_key(const HypothesisSet &h, uint32_t intact) {
    std::string s;
    s.reserve(4 + 2 * 64);
    append_u32(s, intact);
    h.for_each([&](size_t k) { append_u16(s, static_cast<uint32_t>(k)); });
    return s;
}

// Maps states through every element of the label symmetry group.
class SymmetryKeyer {
   public:
    explicit SymmetryKeyer(const MarkingGame &game) : game_(game) {
        const TargetSet &ts = game.targets();
        for (const auto &g : all_symmetries()) {
            Image im;
            TargetSet image = apply_symmetry(g, ts);
            im.mask = image.mask();
            im.slot_swap = g.slot_swap;
            for (const auto &q : ts) {
                im.sigma.push_back(image.index_of(g.apply(q)));
            }
            images_.push_back(std::move(im));
        }
    }

    std::string key(const HypothesisSet &h, uint32_t intact) const {
        std::string best;
        std::vector<uint16_t> ranks;
        int n = game_.n();
        std::vector<int> mapped(n);
        for (const auto &im : images_) {
            uint32_t intact2 = intact;
            if (im.slot_swap) {
                uint32_t even = intact & 0x55555555u;
                uint32_t odd = intact & 0xAAAAAAAAu;
                intact2 = even << 1 | odd >> 1;
            }
            ranks.clear();
            h.for_each([&](size_t k) {
                for (int s = 0; s < n; s++) {
                    mapped[s] = im.sigma[game_.target_of(k, s)];
                }
                ranks.push_back(static_cast<uint16_t>(game_.permutations().rank(mapped.data())));
            });
            std::sort(ranks.begin(), ranks.end());
            std::string s;
            s.reserve(6 + 2 * ranks.size());
            append_u16(s, im.mask);
            append_u32(s, intact2);
            for (uint16_t r : ranks) {
                append_u16(s, r);
            }
            if (best.empty() || s < best) {
                best = std::move(s);
            }
        }
        return best;
    }

   private:
    struct Image {
        uint16_t mask;
        bool slot_swap;
        std::vector<int> sigma;
    };
    const MarkingGame &game_;
    std::vector<Image> images_;
};

struct BudgetExceeded {};

class Search {
   public:
    Search(const MarkingGame &game, SearchBudget budget, SolverOptions options)
        : g_(game), budget_(budget), options_(options), start_(std::chrono::steady_clock::now()) {
        int n = g_.n();
        scratch_.resize(2 * n + 2);
        for (auto &level : scratch_) {
            for (auto &cell : level) {
                cell = HypothesisSet(g_.hypothesis_count());
            }
        }
        if (options_.symmetric_memo) {
            keyer_.emplace(g_);
        }
        if (options_.merge_symmetric_operations && n >= 2) {
            const auto &perms = g_.permutations();
            std::vector<int> a(n);
            for (int i = 0; i < n; i++) {
                for (int j = i + 1; j < n; j++) {
                    std::vector<uint16_t> table(perms.size());
                    for (size_t h = 0; h < perms.size(); h++) {
                        for (int s = 0; s < n; s++) {
                            a[s] = perms.at(h, s);
                        }
                        std::swap(a[i], a[j]);
                        table[h] = static_cast<uint16_t>(perms.rank(a.data()));
                    }
                    transpositions_.push_back({i, j, std::move(table)});
                }
            }
        }
    }

    SearchStats stats;
    bool unlimited = false;

    bool solve(const HypothesisSet &h, uint32_t intact, size_t depth, bool force = false) {
        if (h.count() <= 1) {
            return true;
        }
        std::string key = verdict_key(h, intact);
        if (!force) {
            auto it = memo_.find(key);
            if (it != memo_.end()) {
                stats.memo_hits++;
                return it->second.markable;
            }
        }
        stats.nodes_expanded++;
        stats.max_depth = std::max(stats.max_depth, depth);
        check_budget();

        if (g_.has_dead_pair(h, intact)) {
            stats.dead_pair_prunes++;
            return remember(key, false);
        }
        if (options_.capacity_bound && !within_capacity(h, intact)) {
            stats.capacity_prunes++;
            return remember(key, false);
        }

        std::vector<int> system_class = options_.merge_symmetric_operations ? symmetry_classes(h, intact)
                                                                            : std::vector<int>();
        std::vector<uint32_t> tried;
        auto &cells = scratch_[depth];
        Observation obs[4];

        auto attempt = [&](const Operation &op) -> bool {
            if (!system_class.empty()) {
                uint32_t sig = operation_orbit(op, system_class);
                if (std::find(tried.begin(), tried.end(), sig) != tried.end()) {
                    return false;
                }
                tried.push_back(sig);
            }
            int count = g_.split(h, op, cells.data(), obs);
            if (count == 1 && options_.prune_uninformative) {
                return false;
            }
            uint32_t rest = intact & ~op.consumed_mask();
            for (int c = 0; c < count; c++) {
                if (quick_fail(cells[c], rest)) {
                    return false;
                }
            }
            for (int c = 0; c < count; c++) {
                if (!solve(cells[c], rest, depth + 1)) {
                    return false;
                }
            }
            return true;
        };

        std::vector<HalfId> halves;
        for (int q = 0; q < g_.half_count(); q++) {
            if (intact >> q & 1) {
                halves.push_back(HalfId::from_index(q));
            }
        }
        auto succeed = [&](const Operation &op) {
            remember(key, true, op);
            if (keyer_) {
                ops_[exact_key(h, intact)] = op;
            }
            return true;
        };
        for (HalfId q : halves) {
            if (attempt(Operation::lpx(q))) {
                return succeed(Operation::lpx(q));
            }
        }
        for (HalfId q : halves) {
            if (attempt(Operation::lpz(q))) {
                return succeed(Operation::lpz(q));
            }
        }
        for (size_t i = 0; i < halves.size(); i++) {
            for (size_t j = i + 1; j < halves.size(); j++) {
                Operation op = Operation::swap(halves[i], halves[j]);
                if (attempt(op)) {
                    return succeed(op);
                }
            }
        }
        return remember(key, false);
    }

    StrategyTree witness(const HypothesisSet &h, uint32_t intact) {
        if (h.count() == 1) {
            return StrategyTree::mark(g_.hypothesis(h.first()));
        }
        Operation op = stored_operation(h, intact);
        KnowledgeState k{g_.n(), intact, h};
        std::vector<StrategyTree::Branch> branches;
        for (auto &cell : g_.partition(k, op)) {
            branches.push_back({cell.observation, witness(cell.state.hypotheses, cell.state.intact)});
        }
        return StrategyTree::act(op, std::move(branches));
    }

   private:
    struct Entry {
        bool markable = false;
        bool has_op = false;
        Operation op;
    };
    struct Transposition {
        int i;
        int j;
        std::vector<uint16_t> table;
    };

    std::string verdict_key(const HypothesisSet &h, uint32_t intact) const {
        return keyer_ ? keyer_->key(h, intact) : exact_key(h, intact);
    }

    bool remember(const std::string &key, bool markable, std::optional<Operation> op = std::nullopt) {
        Entry e;
        e.markable = markable;
        if (op && !keyer_) {
            e.has_op = true;
            e.op = *op;
        }
        memo_[key] = e;
        return markable;
    }

    Operation stored_operation(const HypothesisSet &h, uint32_t intact) {
        auto lookup = [&]() -> std::optional<Operation> {
            std::string key = exact_key(h, intact);
            if (keyer_) {
                auto it = ops_.find(key);
                if (it != ops_.end()) {
                    return it->second;
                }
            } else {
                auto it = memo_.find(key);
                if (it != memo_.end() && it->second.has_op) {
                    return it->second.op;
                }
            }
            return std::nullopt;
        };
        if (auto op = lookup()) {
            return *op;
        }
        // Reached only through a symmetric memo hit: redo the node to get its own operation.
        solve(h, intact, 0, true);
        if (auto op = lookup()) {
            return *op;
        }
        throw std::logic_error("witness requested for a state without a stored operation");
    }

    void check_budget() {
        if (unlimited) {
            return;
        }
        if (stats.nodes_expanded > budget_.max_nodes) {
            throw BudgetExceeded{};
        }
        if ((stats.nodes_expanded & 1023) == 0) {
            double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
            if (elapsed > budget_.max_seconds) {
                throw BudgetExceeded{};
            }
        }
    }

    // True when the cell is already known to be unmarkable or is cheaply refuted.
    bool quick_fail(const HypothesisSet &cell, uint32_t intact) {
        if (cell.count() <= 1) {
            return false;
        }
        if (options_.capacity_bound && !within_capacity(cell, intact)) {
            stats.capacity_prunes++;
            return true;
        }
        if (g_.has_dead_pair(cell, intact)) {
            stats.dead_pair_prunes++;
            return true;
        }
        if (!keyer_) {
            auto it = memo_.find(exact_key(cell, intact));
            if (it != memo_.end() && !it->second.markable) {
                stats.memo_hits++;
                return true;
            }
        }
        return false;
    }

    // A strategy tree over these intact halves has at most prod over unknown halves of
    // 2, times L/2 for the halves with L >= 3 possible labels that can be paired with a
    // known half; fewer leaves than hypotheses means no tree can mark.
    bool within_capacity(const HypothesisSet &h, uint32_t intact) const {
        int unknown = 0;
        int known = 0;
        double extras[16];
        int extra_count = 0;
        for (int q = 0; q < g_.half_count(); q++) {
            if (!(intact >> q & 1)) {
                continue;
            }
            int labels = std::popcount(g_.label_set(h, q));
            if (labels == 1) {
                known++;
            } else {
                unknown++;
                if (labels >= 3) {
                    extras[extra_count++] = labels / 2.0;
                }
            }
        }
        std::sort(extras, extras + extra_count, std::greater<double>());
        double capacity = std::ldexp(1.0, unknown);
        for (int e = 0; e < std::min(known, extra_count); e++) {
            capacity *= extras[e];
        }
        return static_cast<double>(h.count()) <= capacity + 1e-9;
    }

    // Classes of systems interchangeable by a transposition that fixes the state.
    std::vector<int> symmetry_classes(const HypothesisSet &h, uint32_t intact) const {
        int n = g_.n();
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) {
                x = parent[x];
            }
            return x;
        };
        for (const auto &t : transpositions_) {
            if ((intact >> (2 * t.i) & 3u) != (intact >> (2 * t.j) & 3u)) {
                continue;
            }
            if (find(t.i) == find(t.j)) {
                continue;
            }
            bool closed = true;
            const uint64_t *words = h.words();
            for (size_t w = 0; w < h.word_count() && closed; w++) {
                uint64_t bits = words[w];
                while (bits) {
                    size_t k = w * 64 + std::countr_zero(bits);
                    bits &= bits - 1;
                    if (!h.test(t.table[k])) {
                        closed = false;
                        break;
                    }
                }
            }
            if (closed) {
                parent[find(t.j)] = find(t.i);
            }
        }
        std::vector<int> cls(n);
        for (int s = 0; s < n; s++) {
            cls[s] = find(s);
        }
        return cls;
    }

    // Operations in one orbit of the state's stabilizer share this signature.
    static uint32_t operation_orbit(const Operation &op, const std::vector<int> &cls) {
        uint32_t kind = static_cast<uint32_t>(op.kind);
        uint32_t ca = cls[op.a.system];
        if (!op.is_swap()) {
            return kind << 24 | ca << 8 | static_cast<uint32_t>(op.a.slot);
        }
        uint32_t cb = cls[op.b.system];
        uint32_t relation = op.a.system == op.b.system ? 0 : (ca == cb ? 1 : 2);
        uint32_t u = ca << 2 | static_cast<uint32_t>(op.a.slot);
        uint32_t v = cb << 2 | static_cast<uint32_t>(op.b.slot);
        if (relation == 1) {
            // Same class, different systems: only the unordered slot pair matters.
            u = ca << 2 | static_cast<uint32_t>(std::min(op.a.slot, op.b.slot));
            v = ca << 2 | static_cast<uint32_t>(std::max(op.a.slot, op.b.slot));
        } else if (v < u) {
            std::swap(u, v);
        }
        return kind << 24 | relation << 22 | u << 11 | v;
    }

    const MarkingGame &g_;
    SearchBudget budget_;
    SolverOptions options_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::array<HypothesisSet, 4>> scratch_;
    std::unordered_map<std::string, Entry> memo_;
    std::unordered_map<std::string, Operation> ops_;
    std::optional<SymmetryKeyer> keyer_;
    std::vector<Transposition> transpositions_;
};

}  // namespace

Verdict qqmark::decide_markable(const TargetSet &ts, SearchBudget budget, SolverOptions options) {
    if (ts.size() < 1 || ts.size() > 7) {
        throw ArgumentError("the solver supports 1..7 targets, got " + std::to_string(ts.size()));
    }
    auto start = std::chrono::steady_clock::now();
    MarkingGame game(ts);
    Search search(game, budget, options);
    KnowledgeState k = game.initial();
    Verdict v;
    try {
        bool markable = search.solve(k.hypotheses, k.intact, 0);
        v.kind = markable ? VerdictKind::Markable : VerdictKind::Unmarkable;
        if (markable) {
            search.unlimited = true;
            v.witness = search.witness(k.hypotheses, k.intact);
        }
    } catch (const BudgetExceeded &) {
        v.kind = VerdictKind::Undecided;
    }
    v.stats = search.stats;
    v.stats.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return v;
}

std::string qqmark::memo_key(const MarkingGame &game, const KnowledgeState &k, bool symmetric) {
    if (symmetric) {
        return SymmetryKeyer(game).key(k.hypotheses, k.intact);
    }
    return exact_key(k.hypotheses, k.intact);
}

std::string qqmark::memo_key(const TargetSet &ts, const KnowledgeState &k, bool symmetric) {
    return memo_key(MarkingGame(ts), k, symmetric);
}

nlohmann::json ClassifyRow::to_json() const {
    nlohmann::json j;
    j["set"] = set.str();
    j["orbit_size"] = orbit_size;
    j["signature"] = signature.str();
    j["case"] = case_name.empty() ? nlohmann::json(nullptr) : nlohmann::json(case_name);
    j["verdict"] = verdict_name(verdict);
    j["witness_depth"] = witness_depth ? nlohmann::json(*witness_depth) : nlohmann::json(nullptr);
    j["scripted"] = scripted;
    j["paper_expectation"] =
        expectation == Expectation::Uncatalogued ? nlohmann::json(nullptr) : nlohmann::json(expectation_name(expectation));
    j["agree"] = agree ? nlohmann::json(*agree) : nlohmann::json(nullptr);
    j["stats"] = stats.to_json();
    j["stats"].erase("elapsed_seconds");
    return j;
}

std::string qqmark::scripted_outcome(const TargetSet &ts) {
    ScriptOutcome out;
    try {
        out = scripted_strategy(ts);
    } catch (const std::exception &e) {
        return std::string("failure: ") + e.what();
    }
    if (out.tree) {
        return verify_strategy(ts, *out.tree).success ? "success" : "failure: tree does not verify";
    }
    if (out.reason == "outside catalog") {
        return "none: " + out.reason;
    }
    return "failure: " + out.reason;
}

namespace {

bool signature_matches(const CaseSignature &sig, const std::string &filter) {
    std::string compact;
    for (char c : filter) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            compact.push_back(c);
        }
    }
    std::string bare = std::to_string(sig.h1) + "," + std::to_string(sig.h2);
    return compact == sig.str() || compact == sig.short_str() || compact == bare;
}

ClassifyRow classify_one(const CanonicalSet &cs, const ClassifyOptions &options) {
    ClassifyRow row;
    row.set = cs.set;
    row.orbit_size = cs.orbit_size;
    row.signature = case_signature(cs.set);
    Verdict v = decide_markable(cs.set, options.budget, options.solver);
    row.verdict = v.kind;
    row.stats = v.stats;
    if (v.witness) {
        row.witness_depth = v.witness->depth();
    }
    CatalogEntry entry = catalog_lookup(cs.set);
    row.case_name = entry.case_name;
    row.expectation = entry.expectation;
    row.scripted = scripted_outcome(cs.set);
    if (row.expectation != Expectation::Uncatalogued && row.verdict != VerdictKind::Undecided) {
        bool expect_markable = row.expectation == Expectation::Markable;
        row.agree = expect_markable == (row.verdict == VerdictKind::Markable);
    }
    return row;
}

}  // namespace

std::vector<ClassifyRow> qqmark::classify(const ClassifyOptions &options,
                                          const std::function<void(const ClassifyRow &)> &on_row) {
    if (options.n < 1 || options.n > 7) {
        throw ArgumentError("classification supports 1..7 targets, got " + std::to_string(options.n));
    }
    std::vector<CanonicalSet> sets;
    for (auto &cs : enumerate_canonical_sets(options.n)) {
        if (!options.signature_filter || signature_matches(case_signature(cs.set), *options.signature_filter)) {
            sets.push_back(std::move(cs));
        }
    }

    std::vector<std::optional<ClassifyRow>> rows(sets.size());
    std::atomic<size_t> next{0};
    std::mutex mutex;
    size_t emitted = 0;
    auto worker = [&] {
        while (true) {
            size_t i = next++;
            if (i >= sets.size()) {
                return;
            }
            ClassifyRow row = classify_one(sets[i], options);
            std::lock_guard<std::mutex> lock(mutex);
            rows[i] = std::move(row);
            while (emitted < rows.size() && rows[emitted]) {
                if (on_row) {
                    on_row(*rows[emitted]);
                }
                emitted++;
            }
        }
    };
    int jobs = std::max(1, options.jobs);
    std::vector<std::thread> threads;
    for (int t = 1; t < jobs; t++) {
        threads.emplace_back(worker);
    }
    worker();
    for (auto &t : threads) {
        t.join();
    }
    std::vector<ClassifyRow> out;
    out.reserve(rows.size());
    for (auto &r : rows) {
        out.push_back(std::move(*r));
    }
    return out;
}
