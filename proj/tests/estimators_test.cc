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

#include <cmath>
#include <limits>

#include "qndsim/experiments.h"

using namespace qndsim;

namespace {

RoundSeries series_from(const std::vector<double> &p, int shots = 1000000) {
    RoundSeries s;
    for (size_t i = 0; i < p.size(); i++) {
        int on = int(std::lround(p[i] * shots));
        s.rows.push_back({int(i) + 1, StabilizerBasis::Z, shots, on, on});
    }
    return s;
}

// Series whose p_target is exactly the given value, using a dyadic shot count.
RoundSeries exact_series(const std::vector<double> &p) {
    const int shots = 1 << 20;
    return series_from(p, shots);
}

}  // namespace

TEST(estimators, fidelity_nd_examples) {
    EXPECT_DOUBLE_EQ(fidelity_nd({0.3, 0.7}, {0.3, 0.7}), 1.0);
    EXPECT_DOUBLE_EQ(fidelity_nd({1, 0}, {0, 1}), 0.0);
    EXPECT_EQ(fidelity_nd({0.5, 0.5}, {1, 0}), 0.5);
    EXPECT_THROW(fidelity_nd({-0.1, 1.1}, {0.5, 0.5}), std::invalid_argument);
}

TEST(estimators, fidelity_qsp_examples) {
    EXPECT_DOUBLE_EQ(fidelity_qsp({0.4, 0.6}, {1, 1}), 1.0);
    for (double pm : {0.0, 0.2, 0.9}) {
        EXPECT_DOUBLE_EQ(fidelity_qsp({pm, 1 - pm}, {0.5, 0.5}), 0.5);
    }
    EXPECT_NEAR(fidelity_qsp({0.7, 0.3}, {0.9, 0.8}), 0.87, 1e-15);
    EXPECT_THROW(fidelity_qsp({0.7, 0.3}, {1.2, 0.8}), std::invalid_argument);
}

TEST(estimators, bell_fidelity_from_correlations) {
    EXPECT_DOUBLE_EQ(bell_fidelity_from_correlations(1, 1, -1, BellLabel::PhiPlus), 1.0);
    EXPECT_DOUBLE_EQ(bell_fidelity_from_correlations(0, 0, 0, BellLabel::PhiMinus), 0.25);
    EXPECT_DOUBLE_EQ(bell_fidelity_from_correlations(-1, -1, -1, BellLabel::PsiMinus), 1.0);
    EXPECT_DOUBLE_EQ(bell_fidelity_from_correlations(-1, 1, 1, BellLabel::PsiPlus), 1.0);
    EXPECT_DOUBLE_EQ(bell_fidelity_from_correlations(1, -1, 1, BellLabel::PhiMinus), 1.0);
    EXPECT_THROW(bell_fidelity_from_correlations(1.2, 0, 0, BellLabel::PhiPlus), std::invalid_argument);
}

TEST(estimators, bell_signs_match_state_expectations) {
    for (auto l : {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus}) {
        auto s = bell_state(l);
        auto signs = bell_correlation_signs(l);
        EXPECT_NEAR(expectation(s, stabilizer_z()), signs[0], 1e-12);
        EXPECT_NEAR(expectation(s, stabilizer_x()), signs[1], 1e-12);
        EXPECT_NEAR(expectation(s, stabilizer_y()), signs[2], 1e-12);
    }
}

TEST(estimators, characterization_row_uses_formulas_exactly) {
    CharacterizationRow r{0.3, 1000, 620, 380, 600, 400, 570, 360, 40, 30};
    Distribution2 in{620.0 / 1000, 380.0 / 1000};
    Distribution2 m{600.0 / 1000, 400.0 / 1000};
    Distribution2 out{570.0 / 600, 360.0 / 400};
    double nd = std::pow(std::sqrt(in.plus * m.plus) + std::sqrt(in.minus * m.minus), 2);
    double qsp = m.plus * out.plus + m.minus * out.minus;
    EXPECT_NEAR(r.f_nd(), nd, 4 * std::numeric_limits<double>::epsilon());
    EXPECT_EQ(r.f_qsp(), qsp);
}

TEST(estimators, binomial_stderr) {
    EXPECT_DOUBLE_EQ(binomial_stderr(0.5, 100), 0.05);
    EXPECT_DOUBLE_EQ(binomial_stderr(1.0, 100), 0.0);
    EXPECT_DOUBLE_EQ(binomial_stderr(0.5, 0), 0.0);
    RoundSeries::Row row{1, StabilizerBasis::Z, 400, 100, 300};
    EXPECT_DOUBLE_EQ(row.p_one(), 0.25);
    EXPECT_DOUBLE_EQ(row.p_zero(), 0.75);
    EXPECT_DOUBLE_EQ(row.p_target(), 0.75);
    EXPECT_DOUBLE_EQ(row.stderr_target(), std::sqrt(0.75 * 0.25 / 400));
}

TEST(fits, open_loop_recovers_generator) {
    std::vector<double> p;
    for (int n = 1; n <= 50; n++) {
        p.push_back(0.5 + 0.5 * std::exp(-0.08 * n));
    }
    RoundSeries s;
    // Exact real-valued targets: encode p directly with a huge shot count.
    const int shots = 1 << 30;
    for (int n = 1; n <= 50; n++) {
        int on = int(std::llround(p[n - 1] * shots));
        s.rows.push_back({n, StabilizerBasis::Z, shots, on, on});
    }
    auto fit = fit_open_loop(s);
    EXPECT_TRUE(fit.converged) << fit.message;
    EXPECT_NEAR(fit.rate, 0.08, 1e-6);
    EXPECT_NEAR(fit.amplitude, 0.5, 1e-6);
    EXPECT_LT(fit.rate_stderr, 1e-6);
}

TEST(fits, open_loop_constant_series_gives_zero_rate) {
    auto fit = fit_open_loop(exact_series(std::vector<double>(50, 1.0)));
    EXPECT_NEAR(fit.rate, 0.0, std::max(1e-9, 3 * fit.rate_stderr));
    EXPECT_NEAR(fit.amplitude, 0.5, 1e-9);
}

TEST(fits, open_loop_needs_five_rounds) {
    EXPECT_THROW(fit_open_loop(exact_series({1, 0.9, 0.8, 0.7})), std::invalid_argument);
}

TEST(fits, closed_loop_flat_series) {
    auto fit = fit_closed_loop(exact_series(std::vector<double>(50, 0.92)));
    EXPECT_NEAR(fit.rate, 0.0, 1e-6);
    EXPECT_NEAR(fit.amplitude, 0.42, 1e-6);
}

TEST(fits, closed_loop_slope_conversion) {
    // p(2) = 0.95, slope -0.002 per round: rate = 0.002 / 0.45.
    std::vector<double> p{0.6};
    for (int n = 2; n <= 50; n++) {
        p.push_back(0.95 - 0.002 * (n - 2));
    }
    const int shots = 1 << 30;
    RoundSeries s;
    for (int n = 1; n <= 50; n++) {
        int on = int(std::llround(p[n - 1] * shots));
        s.rows.push_back({n, StabilizerBasis::Z, shots, on, on});
    }
    auto fit = fit_closed_loop(s);
    EXPECT_NEAR(fit.slope, -0.002, 1e-8);
    EXPECT_NEAR(fit.amplitude, 0.45, 1e-8);
    EXPECT_NEAR(fit.rate, 0.002 / 0.45, 1e-7);
    EXPECT_NEAR(fit.rate, 0.0044, 0.0001);
}

TEST(fits, closed_loop_rejects_vanishing_amplitude) {
    EXPECT_THROW(fit_closed_loop(exact_series(std::vector<double>(10, 0.5))), std::domain_error);
}
