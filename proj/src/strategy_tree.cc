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

#include "qqmark/strategy_tree.h"

#include <algorithm>

#include "qqmark/errors.h"

using namespace qqmark;

StrategyTree StrategyTree::mark(Hypothesis h) {
    StrategyTree t;
    t.mark_ = std::move(h);
    return t;
}

StrategyTree StrategyTree::act(Operation op, std::vector<Branch> branches) {
    std::sort(branches.begin(), branches.end(),
              [](const Branch &a, const Branch &b) { return a.observation < b.observation; });
    StrategyTree t;
    t.op_ = op;
    t.branches_ = std::move(branches);
    return t;
}

const Hypothesis &StrategyTree::marked() const {
    if (!mark_) {
        throw std::logic_error("not a Mark node");
    }
    return *mark_;
}

const Operation &StrategyTree::operation() const {
    if (mark_) {
        throw std::logic_error("not an Act node");
    }
    return op_;
}

const StrategyTree *StrategyTree::child(const Observation &obs) const {
    for (const auto &b : branches_) {
        if (b.observation == obs) {
            return &b.subtree;
        }
    }
    return nullptr;
}

size_t StrategyTree::depth() const {
    if (is_mark()) {
        return 0;
    }
    size_t d = 0;
    for (const auto &b : branches_) {
        d = std::max(d, b.subtree.depth());
    }
    return d + 1;
}

size_t StrategyTree::node_count() const {
    size_t c = 1;
    for (const auto &b : branches_) {
        c += b.subtree.node_count();
    }
    return c;
}

size_t StrategyTree::operation_count(std::optional<Operation::Kind> kind) const {
    if (is_mark()) {
        return 0;
    }
    size_t c = (!kind || *kind == op_.kind) ? 1 : 0;
    for (const auto &b : branches_) {
        c += b.subtree.operation_count(kind);
    }
    return c;
}

bool StrategyTree::operator==(const StrategyTree &other) const {
    if (is_mark() || other.is_mark()) {
        return mark_ == other.mark_;
    }
    if (!(op_ == other.op_) || branches_.size() != other.branches_.size()) {
        return false;
    }
    for (size_t k = 0; k < branches_.size(); k++) {
        if (branches_[k].observation != other.branches_[k].observation ||
            !(branches_[k].subtree == other.branches_[k].subtree)) {
            return false;
        }
    }
    return true;
}

nlohmann::json StrategyTree::to_json() const {
    if (is_mark()) {
        return {{"kind", "mark"}, {"hypothesis", mark_->assignment}};
    }
    nlohmann::json children = nlohmann::json::object();
    for (const auto &b : branches_) {
        children[b.observation.str()] = b.subtree.to_json();
    }
    return {{"kind", "act"}, {"op", op_.str()}, {"children", children}};
}

namespace {

StrategyTree tree_from_json(const nlohmann::json &j, const std::string &path) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw MalformedStrategy("node needs a string 'kind'", path);
    }
    std::string kind = j["kind"];
    if (kind == "mark") {
        if (!j.contains("hypothesis") || !j["hypothesis"].is_array()) {
            throw MalformedStrategy("mark node needs a 'hypothesis' array", path);
        }
        Hypothesis h;
        for (const auto &v : j["hypothesis"]) {
            if (!v.is_number_integer()) {
                throw MalformedStrategy("hypothesis entries must be integers", path);
            }
            h.assignment.push_back(v.get<int>());
        }
        return StrategyTree::mark(std::move(h));
    }
    if (kind != "act") {
        throw MalformedStrategy("unknown node kind '" + kind + "'", path);
    }
    if (!j.contains("op") || !j["op"].is_string() || !j.contains("children") || !j["children"].is_object()) {
        throw MalformedStrategy("act node needs 'op' and 'children'", path);
    }
    Operation op;
    try {
        op = Operation::parse(j["op"].get<std::string>());
    } catch (const ArgumentError &e) {
        throw MalformedStrategy(e.what(), path);
    }
    std::vector<StrategyTree::Branch> branches;
    for (const auto &[key, value] : j["children"].items()) {
        Observation obs;
        try {
            obs = Observation::parse(key);
        } catch (const ArgumentError &e) {
            throw MalformedStrategy(e.what(), path);
        }
        if ((obs.width == 2) != op.is_swap()) {
            throw MalformedStrategy("observation '" + key + "' does not fit " + op.str(), path);
        }
        branches.push_back({obs, tree_from_json(value, path + "/" + key)});
    }
    return StrategyTree::act(op, std::move(branches));
}

struct Verifier {
    const MarkingGame &game;
    VerifyReport report;

    void fail(size_t hyp, std::string detail) {
        if (!report.failing_hypothesis) {
            report.failing_hypothesis = game.hypothesis(hyp);
            report.detail = std::move(detail);
        }
    }

    void walk(const StrategyTree &t, const KnowledgeState &k, const std::string &path) {
        if (t.is_mark()) {
            const Hypothesis &m = t.marked();
            bool valid = static_cast<int>(m.size()) == game.n();
            size_t target = valid ? game.index_of(m) : game.hypothesis_count();
            k.hypotheses.for_each([&](size_t h) {
                if (h != target) {
                    fail(h, "marked " + m.str() + " at " + (path.empty() ? "root" : path));
                }
            });
            return;
        }
        const Operation &op = t.operation();
        std::vector<HalfId> used{op.a};
        if (op.is_swap()) {
            used.push_back(op.b);
        }
        for (HalfId h : used) {
            if (h.system < 0 || h.system >= game.n() || !k.is_intact(h)) {
                throw MalformedStrategy(op.str() + " uses half " + h.str() + " which is not intact", path);
            }
        }
        auto cells = game.partition(k, op);
        if (cells.size() != t.branches().size()) {
            throw MalformedStrategy(op.str() + " has " + std::to_string(t.branches().size()) + " branches but " +
                                        std::to_string(cells.size()) + " realizable observations",
                                    path);
        }
        for (const auto &cell : cells) {
            const StrategyTree *child = t.child(cell.observation);
            if (!child) {
                throw MalformedStrategy("no branch for observation " + cell.observation.str() + " of " + op.str(),
                                        path);
            }
            walk(*child, cell.state, path + "/" + cell.observation.str());
        }
    }
};

}  // namespace

StrategyTree StrategyTree::from_json(const nlohmann::json &j) {
    return tree_from_json(j, "");
}

VerifyReport qqmark::verify_strategy(const MarkingGame &game, const StrategyTree &tree) {
    Verifier v{game, {}};
    v.walk(tree, game.initial(), "");
    v.report.success = !v.report.failing_hypothesis.has_value();
    return v.report;
}

VerifyReport qqmark::verify_strategy(const TargetSet &ts, const StrategyTree &tree) {
    return verify_strategy(MarkingGame(ts), tree);
}
