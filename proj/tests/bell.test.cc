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

#include "qqmark/bell.h"

#include <cmath>
#include <map>
#include <set>

#include "gtest/gtest.h"
#include "qqmark/errors.h"

using namespace qqmark;

namespace {

BellLabel L(const char *text) {
    return BellLabel::parse(text);
}

}  // namespace

TEST(bell, text_round_trip) {
    for (auto l : BellLabel::all()) {
        ASSERT_EQ(BellLabel::parse(l.str()), l);
    }
    ASSERT_EQ(L("10").x(), 1u);
    ASSERT_EQ(L("10").z(), 0u);
    ASSERT_EQ(QuquadLabel::parse("00.01").second, L("01"));
    ASSERT_EQ(QuquadLabel::parse("11.10").str(), "11.10");
    for (unsigned c = 0; c < 16; c++) {
        ASSERT_EQ(QuquadLabel::parse(QuquadLabel::from_code(c).str()).code(), c);
    }
    ASSERT_THROW(BellLabel::parse("2"), ParseError);
    ASSERT_THROW(BellLabel::parse("012"), ParseError);
    ASSERT_THROW(QuquadLabel::parse("00-01"), ParseError);
}

TEST(bell, stabilizer_sign) {
    ASSERT_EQ(stabilizer_sign(L("00"), Basis::X), Sign::Plus);
    ASSERT_EQ(stabilizer_sign(L("10"), Basis::X), Sign::Minus);
    ASSERT_EQ(stabilizer_sign(L("01"), Basis::X), Sign::Plus);
    ASSERT_EQ(stabilizer_sign(L("01"), Basis::Z), Sign::Minus);
    ASSERT_EQ(stabilizer_sign(L("11"), Basis::Z), Sign::Minus);
}

TEST(bell, lpm_bit) {
    ASSERT_EQ(lpm_bit(L("00"), Basis::X), 0u);
    ASSERT_EQ(lpm_bit(L("10"), Basis::X), 1u);
    ASSERT_EQ(lpm_bit(L("01"), Basis::Z), 1u);
    ASSERT_EQ(lpm_bit(L("01"), Basis::X), 0u);
}

TEST(bell, sample_lpm_product_law) {
    Rng rng(7);
    for (auto l : BellLabel::all()) {
        for (Basis b : {Basis::X, Basis::Z}) {
            for (int k = 0; k < 1000; k++) {
                LpmOutcome o = sample_lpm(l, b, rng);
                ASSERT_EQ(o.alice * o.bob, stabilizer_sign(l, b));
                ASSERT_EQ((1 - sign_value(o.alice * o.bob)) / 2, static_cast<int>(lpm_bit(l, b)));
            }
        }
    }
}

TEST(bell, sample_lpm_alice_is_fair) {
    Rng rng(1234);
    const int samples = 10000;
    int sum = 0;
    for (int k = 0; k < samples; k++) {
        sum += sign_value(sample_lpm(L("00"), Basis::X, rng).alice);
    }
    double mean = static_cast<double>(sum) / samples;
    ASSERT_LT(std::abs(mean), 4.0 / std::sqrt(samples));
}

TEST(bell, swap_observation) {
    ASSERT_EQ(swap_observation(L("00"), L("00")), L("00"));
    ASSERT_EQ(swap_observation(L("10"), L("01")), L("11"));
    for (auto a : BellLabel::all()) {
        for (auto b : BellLabel::all()) {
            BellLabel s = swap_observation(a, b);
            ASSERT_EQ(s.x(), a.x() ^ b.x());
            ASSERT_EQ(s.z(), a.z() ^ b.z());
        }
    }
}

TEST(bell, sample_swap_conservation) {
    Rng rng(99);
    for (auto a : BellLabel::all()) {
        for (auto b : BellLabel::all()) {
            for (int k = 0; k < 200; k++) {
                SwapOutcome o = sample_swap(a, b, rng);
                ASSERT_EQ(o.alice.x() ^ o.bob.x(), a.x() ^ b.x());
                ASSERT_EQ(o.alice.z() ^ o.bob.z(), a.z() ^ b.z());
            }
        }
    }
    for (int k = 0; k < 100; k++) {
        SwapOutcome o = sample_swap(L("00"), L("00"), rng);
        ASSERT_EQ(o.alice, o.bob);
        o = sample_swap(L("10"), L("01"), rng);
        ASSERT_EQ(o.alice ^ L("11"), o.bob);
    }
}

TEST(bell, sample_swap_alice_uniform) {
    Rng rng(5);
    const int samples = 10000;
    int counts[4] = {};
    for (int k = 0; k < samples; k++) {
        counts[sample_swap(L("00"), L("00"), rng).alice.code()]++;
    }
    for (int c : counts) {
        ASSERT_NEAR(static_cast<double>(c) / samples, 0.25, 0.02);
    }
}

TEST(bell, oracle_known_cases) {
    auto d = oracle_swap_distribution(L("00"), L("00"));
    ASSERT_EQ(d.size(), 16u);
    double total = 0;
    for (const auto &[pair, p] : d) {
        total += p;
        ASSERT_NEAR(p, pair.first == pair.second ? 0.25 : 0.0, 1e-12);
    }
    ASSERT_NEAR(total, 1.0, 1e-12);

    std::set<std::pair<BellLabel, BellLabel>> support;
    for (const auto &[pair, p] : oracle_swap_distribution(L("10"), L("01"))) {
        if (p > 1e-12) {
            support.insert(pair);
        }
    }
    std::set<std::pair<BellLabel, BellLabel>> expected;
    for (auto a : BellLabel::all()) {
        expected.insert({a, a ^ L("11")});
    }
    ASSERT_EQ(support, expected);
}

TEST(bell, oracle_agrees_with_swap_rule_on_all_pairs) {
    Rng rng(3);
    for (auto a : BellLabel::all()) {
        for (auto b : BellLabel::all()) {
            auto d = oracle_swap_distribution(a, b);
            double total = 0;
            for (const auto &[pair, p] : d) {
                total += p;
                bool allowed = (pair.first ^ pair.second) == swap_observation(a, b);
                ASSERT_NEAR(p, allowed ? 0.25 : 0.0, 1e-12) << a.str() << " " << b.str();
            }
            ASSERT_NEAR(total, 1.0, 1e-12);
            for (int k = 0; k < 50; k++) {
                SwapOutcome o = sample_swap(a, b, rng);
                ASSERT_GT(d.at({o.alice, o.bob}), 0.2);
            }
        }
    }
}

TEST(bell, parity_class) {
    ASSERT_EQ(parity_class(QuquadLabel::parse("00.01")).str(), "S01");
    ASSERT_EQ(parity_class(QuquadLabel::parse("00.00")).str(), "S00");
    ASSERT_EQ(parity_class(QuquadLabel::parse("10.11")).str(), "S01");
    std::map<std::string, int> sizes;
    for (unsigned c = 0; c < 16; c++) {
        sizes[parity_class(QuquadLabel::from_code(c)).str()]++;
    }
    ASSERT_EQ(sizes.size(), 4u);
    for (const auto &[name, count] : sizes) {
        ASSERT_EQ(count, 4) << name;
    }
}

TEST(bell, set_D_and_distinguishing_basis) {
    ASSERT_TRUE(in_D(L("00"), L("11")));
    ASSERT_TRUE(in_D(L("01"), L("10")));
    ASSERT_FALSE(in_D(L("00"), L("00")));
    ASSERT_FALSE(in_D(L("00"), L("01")));
    ASSERT_EQ(distinguishing_basis(L("00"), L("10")), Distinguisher::X);
    ASSERT_EQ(distinguishing_basis(L("00"), L("01")), Distinguisher::Z);
    ASSERT_EQ(distinguishing_basis(L("00"), L("00")), Distinguisher::None);
    for (auto a : BellLabel::all()) {
        for (auto b : BellLabel::all()) {
            ASSERT_EQ(in_D(a, b), distinguishing_basis(a, b) == Distinguisher::Either);
            auto basis = separating_basis(a, b);
            ASSERT_EQ(basis.has_value(), a != b);
            if (basis) {
                ASSERT_NE(a.bit(*basis), b.bit(*basis));
            }
        }
    }
    ASSERT_EQ(separating_basis(L("00"), L("11")), Basis::X);
}

TEST(bell, sampling_is_seed_deterministic) {
    Rng r1(42), r2(42);
    for (int k = 0; k < 100; k++) {
        SwapOutcome a = sample_swap(L("10"), L("11"), r1);
        SwapOutcome b = sample_swap(L("10"), L("11"), r2);
        ASSERT_EQ(a.alice, b.alice);
        ASSERT_EQ(a.bob, b.bob);
    }
}
