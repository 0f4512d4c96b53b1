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

#include "gtest/gtest.h"
#include "qqmark/errors.h"
#include "qqmark/solver.h"
#include "qqmark/strategies.h"

using namespace qqmark;

namespace {

TargetSet S(const char *text) {
    return TargetSet::parse(text);
}

std::string malformed_path(const char *json) {
    try {
        StrategyTree::from_json(nlohmann::json::parse(json));
    } catch (const MalformedStrategy &e) {
        return e.path;
    }
    return "<no error>";
}

}  // namespace

TEST(strategy_tree, shape_queries) {
    StrategyTree leaf = StrategyTree::mark(Hypothesis::identity(2));
    ASSERT_TRUE(leaf.is_mark());
    ASSERT_EQ(leaf.depth(), 0u);
    ASSERT_THROW(leaf.operation(), std::logic_error);
    StrategyTree t = StrategyTree::act(Operation::lpx({0, 1}), {{Observation::one_bit(1), leaf},
                                                               {Observation::one_bit(0), leaf}});
    ASSERT_EQ(t.depth(), 1u);
    ASSERT_EQ(t.node_count(), 3u);
    ASSERT_EQ(t.branches()[0].observation, Observation::one_bit(0));
    ASSERT_EQ(t.operation_count(Operation::Kind::LPX), 1u);
    ASSERT_EQ(t.operation_count(Operation::Kind::SWAP), 0u);
    ASSERT_EQ(t.child(Observation::one_bit(1)), &t.branches()[1].subtree);
    ASSERT_EQ(t.child(Observation::two_bit(BellLabel())), nullptr);
}

TEST(strategy_tree, json_round_trip) {
    for (const char *set : {"00.00,00.01,01.00,01.01", "00.00,01.00,10.00,11.00", "00.00,01.10,10.01,11.11"}) {
        StrategyTree t = n4_strategy(S(set));
        nlohmann::json j = t.to_json();
        ASSERT_EQ(StrategyTree::from_json(j), t);
        ASSERT_EQ(StrategyTree::from_json(nlohmann::json::parse(j.dump())).to_json(), j);
    }
    Verdict v = decide_markable(S("00.00,00.01,01.10,10.10,11.10"));
    ASSERT_TRUE(v.witness.has_value());
    ASSERT_EQ(StrategyTree::from_json(v.witness->to_json()), *v.witness);

    nlohmann::json swap = nlohmann::json::parse(
        R"j({"kind":"act","op":"SWAP(0:1,0:2)","children":{"01":{"kind":"mark","hypothesis":[0]}}})j");
    StrategyTree s = StrategyTree::from_json(swap);
    ASSERT_EQ(s.branches()[0].observation, Observation::two_bit(BellLabel::parse("01")));
    ASSERT_EQ(s.to_json(), swap);
}

TEST(strategy_tree, json_errors_name_the_node) {
    ASSERT_EQ(malformed_path(R"j({"kind":"leaf"})j"), "");
    ASSERT_EQ(malformed_path(R"j([1,2])j"), "");
    ASSERT_EQ(malformed_path(R"j({"kind":"act","op":"LPX(0:1)","children":{"0":{"kind":"mark"}}})j"), "/0");
    ASSERT_EQ(malformed_path(
                  R"j({"kind":"act","op":"LPX(0:1)","children":{"1":{"kind":"act","op":"LPQ(1:1)","children":{}}}})j"),
              "/1");
    ASSERT_EQ(malformed_path(R"j({"kind":"act","op":"LPX(0:1)","children":{"01":{"kind":"mark","hypothesis":[0]}}})j"),
              "");
    ASSERT_EQ(malformed_path(R"j({"kind":"mark","hypothesis":["a"]})j"), "");
    try {
        StrategyTree::from_json(nlohmann::json::parse(R"j({"kind":"act","op":"LPX(0:1)","children":{"0":{}}})j"));
        FAIL();
    } catch (const MalformedStrategy &e) {
        ASSERT_NE(std::string(e.what()).find("/0"), std::string::npos) << e.what();
    }
}

TEST(strategy_tree, verify_two_lpm_tree) {
    TargetSet ts = S("00.00,00.01,01.00,01.01");
    StrategyTree t = n4_strategy(ts);
    VerifyReport r = verify_strategy(ts, t);
    ASSERT_TRUE(r.success) << r.detail;
    ASSERT_FALSE(r.failing_hypothesis.has_value());
    ASSERT_EQ(t.operation_count(Operation::Kind::SWAP), 0u);
    ASSERT_LE(t.depth(), 8u);
}

TEST(strategy_tree, verify_reports_counterexample) {
    TargetSet ts = S("00.00,00.01,01.00");
    StrategyTree blind = StrategyTree::mark(Hypothesis::identity(3));
    VerifyReport r = verify_strategy(ts, blind);
    ASSERT_FALSE(r.success);
    ASSERT_TRUE(r.failing_hypothesis.has_value());
    ASSERT_NE(*r.failing_hypothesis, Hypothesis::identity(3));

    ASSERT_TRUE(verify_strategy(S("11.01"), StrategyTree::mark(Hypothesis::identity(1))).success);
}

TEST(strategy_tree, verify_rejects_structural_violations) {
    TargetSet ts = S("00.00,10.00");
    StrategyTree leaf0 = StrategyTree::mark(Hypothesis{{0, 1}});
    StrategyTree leaf1 = StrategyTree::mark(Hypothesis{{1, 0}});
    // LPX on 0:1 separates the two; measuring it again reuses a consumed half.
    StrategyTree reuse = StrategyTree::act(
        Operation::lpx({0, 1}),
        {{Observation::one_bit(0), StrategyTree::act(Operation::lpz({0, 1}), {{Observation::one_bit(0), leaf0}})},
         {Observation::one_bit(1), leaf1}});
    ASSERT_THROW(verify_strategy(ts, reuse), MalformedStrategy);

    StrategyTree missing = StrategyTree::act(Operation::lpx({0, 1}), {{Observation::one_bit(0), leaf0}});
    ASSERT_THROW(verify_strategy(ts, missing), MalformedStrategy);

    StrategyTree good =
        StrategyTree::act(Operation::lpx({0, 1}), {{Observation::one_bit(0), leaf0}, {Observation::one_bit(1), leaf1}});
    ASSERT_TRUE(verify_strategy(ts, good).success);

    StrategyTree out_of_range = StrategyTree::act(Operation::lpx({5, 1}), {{Observation::one_bit(0), leaf0}});
    ASSERT_THROW(verify_strategy(ts, out_of_range), MalformedStrategy);
}
