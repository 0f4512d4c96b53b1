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

#include "qqmark/simulate.h"

#include "qqmark/errors.h"

using namespace qqmark;

SimulationResult qqmark::simulate(const MarkingGame &game, const Hypothesis &hidden, const StrategyTree &tree,
                                  uint64_t seed) {
    size_t hidden_index = game.index_of(hidden);
    Rng rng(seed);
    SimulationResult result;
    result.hidden = hidden;
    KnowledgeState k = game.initial();
    const StrategyTree *node = &tree;
    std::string path;
    while (!node->is_mark()) {
        const Operation &op = node->operation();
        if (!k.is_intact(op.a) || (op.is_swap() && !k.is_intact(op.b))) {
            throw MalformedStrategy(op.str() + " uses a consumed half", path);
        }
        TraceEvent ev;
        ev.op = op;
        BellLabel la = game.label(hidden_index, op.a);
        if (op.is_swap()) {
            SwapOutcome s = sample_swap(la, game.label(hidden_index, op.b), rng);
            ev.raw = s;
            ev.observation = Observation::two_bit(s.alice ^ s.bob);
        } else {
            LpmOutcome o = sample_lpm(la, op.basis(), rng);
            ev.raw = o;
            ev.observation = Observation::one_bit(o.alice * o.bob == Sign::Minus ? 1 : 0);
        }
        for (auto &cell : game.partition(k, op)) {
            if (cell.observation == ev.observation) {
                k = std::move(cell.state);
                break;
            }
        }
        ev.hypotheses_remaining = k.size();
        result.events.push_back(ev);
        path += "/" + ev.observation.str();
        node = node->child(ev.observation);
        if (!node) {
            throw MalformedStrategy("no branch for observation " + ev.observation.str() + " of " + op.str(), path);
        }
    }
    result.marked = node->marked();
    result.success = result.marked == hidden;
    return result;
}

namespace {

std::string sign_str(Sign s) {
    return s == Sign::Plus ? "+1" : "-1";
}

std::string raw_str(const TraceEvent &ev) {
    if (auto *o = std::get_if<LpmOutcome>(&ev.raw)) {
        return "(" + sign_str(o->alice) + "," + sign_str(o->bob) + ")";
    }
    const auto &s = std::get<SwapOutcome>(ev.raw);
    return "(A:" + s.alice.str() + ",B:" + s.bob.str() + ")";
}

}  // namespace

std::string qqmark::trace_text(const SimulationResult &result) {
    std::string out;
    for (size_t k = 0; k < result.events.size(); k++) {
        const auto &ev = result.events[k];
        out += "step " + std::to_string(k + 1) + ": " + ev.op.str() + " raw=" + raw_str(ev) +
               " obs=" + ev.observation.str() + " |H|=" + std::to_string(ev.hypotheses_remaining) + "\n";
    }
    out += std::string(result.success ? "marked correctly: " : "marked incorrectly: ") + result.marked.str() +
           " (hidden " + result.hidden.str() + ")\n";
    return out;
}

nlohmann::json qqmark::trace_json(const SimulationResult &result) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto &ev : result.events) {
        nlohmann::json e;
        e["op"] = ev.op.kind == Operation::Kind::LPX ? "LPX" : ev.op.kind == Operation::Kind::LPZ ? "LPZ" : "SWAP";
        if (ev.op.is_swap()) {
            e["halves"] = {ev.op.a.str(), ev.op.b.str()};
            const auto &s = std::get<SwapOutcome>(ev.raw);
            e["raw"] = {{"alice", s.alice.str()}, {"bob", s.bob.str()}};
        } else {
            e["half"] = ev.op.a.str();
            const auto &o = std::get<LpmOutcome>(ev.raw);
            e["raw"] = {{"alice", sign_value(o.alice)}, {"bob", sign_value(o.bob)}};
        }
        e["observation"] = ev.observation.str();
        e["hypotheses_remaining"] = ev.hypotheses_remaining;
        events.push_back(e);
    }
    return {{"events", events},
            {"hidden", result.hidden.assignment},
            {"marked", result.marked.assignment},
            {"success", result.success}};
}
