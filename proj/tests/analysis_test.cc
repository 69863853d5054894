// Copyright 2026 The qndsim Authors
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

#include <gtest/gtest.h>

#include <random>

#include "qndsim/experiments.h"

using namespace qndsim;

namespace {

RoundEntry entry(StabilizerBasis basis, int bit, std::vector<CorrectionKind> corrections = {}, bool decision = false) {
    RoundEntry e;
    e.basis = basis;
    e.outcome.bit = bit;
    e.outcome.true_bit = bit;
    e.corrections = std::move(corrections);
    e.decision = decision;
    return e;
}

constexpr auto Z = StabilizerBasis::Z;
constexpr auto X = StabilizerBasis::X;
constexpr auto CZ = CorrectionKind::CZ;
constexpr auto CX = CorrectionKind::CX;

}  // namespace

TEST(analysis, correlation_categories_from_intervening_corrections) {
    TrajectoryRecord r;
    // Cycle layout Z, X(+decision). Z pairs: (0,2) none, (2,4) CX, (4,6) CZ, (6,8) both.
    r.rounds = {entry(Z, 1), entry(X, 1, {}, true),    entry(Z, 1), entry(X, 0, {CX}, true),
                entry(Z, 1), entry(X, 1, {CZ}, true),  entry(Z, 0), entry(X, 0, {CZ, CX}, true),
                entry(Z, 1), entry(X, 1, {}, true)};
    auto t = correlation_analysis({r}, Z, 0);
    EXPECT_EQ(t[CorrectionCategory::None].pairs, 1);
    EXPECT_EQ(t[CorrectionCategory::None].equal, 1);
    EXPECT_EQ(t[CorrectionCategory::CxOnly].pairs, 1);
    EXPECT_EQ(t[CorrectionCategory::CxOnly].equal, 1);
    EXPECT_EQ(t[CorrectionCategory::CzOnly].pairs, 1);
    EXPECT_EQ(t[CorrectionCategory::CzOnly].equal, 0);
    EXPECT_EQ(t[CorrectionCategory::Both].pairs, 1);
    EXPECT_EQ(t[CorrectionCategory::Both].equal, 0);
    EXPECT_DOUBLE_EQ(t[CorrectionCategory::CxOnly].correlation(), 1.0);

    auto skipped = correlation_analysis({r}, Z, 1);
    EXPECT_EQ(skipped[CorrectionCategory::None].pairs, 0);
    EXPECT_TRUE(skipped[CorrectionCategory::None].empty());
    EXPECT_TRUE(std::isnan(skipped[CorrectionCategory::None].correlation()));

    auto xt = correlation_analysis({r}, X, 0);
    // X pairs: (1,3) none between, (3,5) CX at 3, (5,7) CZ at 5, (7,9) both at 7.
    EXPECT_EQ(xt[CorrectionCategory::None].pairs, 1);
    EXPECT_EQ(xt[CorrectionCategory::CxOnly].pairs, 1);
    EXPECT_EQ(xt[CorrectionCategory::CzOnly].pairs, 1);
    EXPECT_EQ(xt[CorrectionCategory::Both].pairs, 1);
    EXPECT_THROW(correlation_analysis({r}, Z, -1), std::invalid_argument);
}

TEST(analysis, category_names) {
    EXPECT_EQ(to_string(CorrectionCategory::None), "none");
    EXPECT_EQ(to_string(CorrectionCategory::CxOnly), "cx_only");
    EXPECT_EQ(to_string(CorrectionCategory::CzOnly), "cz_only");
    EXPECT_EQ(to_string(CorrectionCategory::Both), "both");
}

TEST(analysis, never_feedback_is_undefined_and_flagged) {
    std::vector<TrajectoryRecord> records(5);
    for (auto &r : records) {
        for (int i = 0; i < 10; i++) {
            r.rounds.push_back(entry(Z, 1, {}, true));
        }
    }
    auto stats = conditional_feedback_stats(records);
    ASSERT_EQ(stats.rows.size(), 9u);
    EXPECT_TRUE(std::isnan(stats.pooled.p_again()));
    EXPECT_TRUE(std::isnan(stats.pooled.stderr_again()));
    EXPECT_TRUE(stats.pooled.sparse());
    EXPECT_FALSE(stats.warnings.empty());
}

TEST(analysis, independent_feedback_gives_equal_conditionals) {
    std::mt19937_64 gen(3);
    std::bernoulli_distribution feed(0.2);
    std::vector<TrajectoryRecord> records(4000);
    for (auto &r : records) {
        for (int i = 0; i < 25; i++) {
            bool f = feed(gen);
            r.rounds.push_back(entry(Z, 1));
            r.rounds.push_back(entry(X, 1, f ? std::vector<CorrectionKind>{CZ} : std::vector<CorrectionKind>{}, true));
        }
    }
    auto stats = conditional_feedback_stats(records);
    ASSERT_EQ(stats.rows.size(), 24u);
    const auto &p = stats.pooled;
    EXPECT_NEAR(p.p_again(), 0.2, 4 * p.stderr_again());
    EXPECT_NEAR(p.p_after_none(), 0.2, 4 * p.stderr_after_none());
    EXPECT_FALSE(stats.rows[0].sparse());
    EXPECT_EQ(p.after_feedback + p.after_no_feedback, 4000 * 24);
}

TEST(analysis, sparse_threshold) {
    ConditionalFeedbackRow r{1, 19, 2, 500, 10};
    EXPECT_TRUE(r.sparse());
    r.after_feedback = 20;
    EXPECT_FALSE(r.sparse());
    EXPECT_DOUBLE_EQ(r.p_again(), 0.1);
    EXPECT_DOUBLE_EQ(r.p_after_none(), 0.02);
}
