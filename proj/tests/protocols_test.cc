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

#include <numbers>

#include "oracles.h"
#include "qndsim/experiments.h"

using namespace qndsim;
namespace o = qndsim::oracle;

namespace {

constexpr double kPi = std::numbers::pi;
const BellLabel kLabels[] = {BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

}  // namespace

TEST(protocols, qnd_repeatability_noiseless) {
    SimulationSettings settings;
    for (auto basis : {StabilizerBasis::Z, StabilizerBasis::X}) {
        for (int target : {1, -1}) {
            StabilizationRun run;
            run.basis = basis;
            run.target = target;
            run.shots = 200;
            auto r = run_stabilization(run, settings, 5);
            ASSERT_EQ(r.series.rows.size(), 50u);
            for (const auto &row : r.series.rows) {
                EXPECT_EQ(row.on_target, row.shots);
                EXPECT_EQ(row.basis, basis);
            }
        }
    }
}

TEST(protocols, repeated_outcomes_agree_within_trajectory) {
    SimulationSettings settings;
    StabilizationRun run;
    run.feedback = false;
    run.shots = 100;
    run.rounds = 20;
    // Open loop from a superposed input: the first outcome is random, every later one repeats it.
    TrajectorySimulator sim(settings, prepare_input(0.4), 1);
    int first = sim.measure(StabilizerBasis::Z).outcome.bit;
    for (int i = 0; i < 19; i++) {
        EXPECT_EQ(sim.measure(StabilizerBasis::Z).outcome.bit, first);
    }
    EXPECT_EQ(sim.rounds_done(), 20);
}

TEST(protocols, first_round_matches_input_parity_distribution) {
    SimulationSettings settings;
    for (double theta : {0.2, 0.9, 2.0}) {
        const int n = 4000;
        int ones = 0;
        for (int k = 0; k < n; k++) {
            TrajectorySimulator sim(settings, prepare_input(theta), derive_seed(17, {uint64_t(k)}));
            ones += sim.measure(StabilizerBasis::Z).outcome.bit;
        }
        double p_plus = (1 + std::sin(2 * theta)) / 2;
        EXPECT_TRUE(o::within_sigma(double(ones) / n, p_plus, n, 4)) << theta;
    }
}

TEST(protocols, single_round_noiseless_is_perfect) {
    SimulationSettings settings;
    std::vector<double> grid{0.0, kPi / 8, kPi / 4, 1.0, 2.0};
    auto t = run_single_round(grid, 1000, settings, 3);
    ASSERT_EQ(t.rows.size(), grid.size());
    for (const auto &r : t.rows) {
        EXPECT_EQ(r.plus_zero + r.minus_one, 0);
        EXPECT_DOUBLE_EQ(r.f_qsp(), 1.0);
        EXPECT_GT(r.f_nd(), 0.99);
        EXPECT_EQ(r.in_plus + r.in_minus, 1000);
    }
    // At pi/4 the input is the +1 eigenstate.
    EXPECT_EQ(t.rows[2].plus_one, 1000);
    EXPECT_DOUBLE_EQ(t.rows[2].f_nd(), 1.0);
}

TEST(protocols, feedback_bias_only_steady_state) {
    SimulationSettings settings;
    settings.noise.readout_bias0 = 0.05;
    StabilizationRun run;
    run.feedback = true;
    run.target = -1;
    run.shots = 4000;
    run.rounds = 30;
    auto r = run_stabilization(run, settings, 8);
    // Flip-and-correct chain: true state wrong with probability b, read wrong w.p. b(1-b) + (1-b)b.
    // The classified outcome is on target with probability (1-b)^2 + b^2.
    const double b = 0.05;
    const double want = (1 - b) * (1 - b) + b * b;
    int on = 0, shots = 0;
    for (size_t i = 10; i < r.series.rows.size(); i++) {
        on += r.series.rows[i].on_target;
        shots += r.series.rows[i].shots;
    }
    EXPECT_NEAR(double(on) / shots, want, 0.01);
}

TEST(protocols, bell_noiseless_from_mixed_input_reaches_target) {
    SimulationSettings settings;
    for (auto target : kLabels) {
        FeedbackPolicy policy = FeedbackPolicy::bell(target);
        for (uint64_t seed = 0; seed < 20; seed++) {
            TrajectoryRecord rec;
            Mat18 mixed = Mat18::Zero();
            for (int b1 = 0; b1 < 2; b1++) {
                for (int b2 = 0; b2 < 2; b2++) {
                    mixed(basis_index(b1, b2, 0), basis_index(b1, b2, 0)) = 0.25;
                }
            }
            auto out = run_bell_cycles(RegisterState(mixed), target, 1, settings, policy, seed, &rec);
            EXPECT_NEAR(bell_state_fidelity(out, target), 1.0, 1e-9);
            ASSERT_EQ(rec.rounds.size(), 2u);
        }
        BellRun run;
        run.target = target;
        run.cycles = 3;
        run.shots = 300;
        run.input = BellInput::MaximallyMixed;
        run.sample_points = {1, 3};
        auto r = run_bell_stabilization(run, settings, 4);
        for (const auto &s : r.fidelities) {
            EXPECT_NEAR(s.exact_fidelity, 1.0, 1e-9);
            EXPECT_NEAR(s.fidelity, 1.0, 1e-12);
        }
    }
}

TEST(protocols, emulated_fidelity_tracks_density_matrix_fidelity) {
    SimulationSettings settings;
    settings.noise.gamma_dep = 0.1;
    BellRun run;
    run.target = BellLabel::PsiMinus;
    run.cycles = 2;
    run.shots = 6000;
    run.sample_points = {1};
    auto r = run_bell_stabilization(run, settings, 21);
    ASSERT_EQ(r.fidelities.size(), 1u);
    const auto &s = r.fidelities[0];
    EXPECT_NEAR(s.fidelity, s.exact_fidelity, 4 * s.stderr_fidelity);
    EXPECT_LT(s.exact_fidelity, 0.95);
}

TEST(protocols, runners_validate_arguments) {
    SimulationSettings settings;
    StabilizationRun bad;
    bad.rounds = 0;
    EXPECT_THROW(run_stabilization(bad, settings, 1), std::invalid_argument);
    bad.rounds = 5;
    bad.target = 0;
    EXPECT_THROW(run_stabilization(bad, settings, 1), std::invalid_argument);
    BellRun bell;
    bell.cycles = 3;
    bell.sample_points = {4};
    EXPECT_THROW(run_bell_stabilization(bell, settings, 1), std::invalid_argument);
    EXPECT_THROW(run_single_round({0.1}, 0, settings, 1), std::invalid_argument);
}

TEST(protocols, records_are_independent_of_worker_count) {
    SimulationSettings one;
    one.noise.gamma_dep = 0.05;
    one.noise.gamma_leak = 0.01;
    one.noise.readout_bias0 = 0.02;
    SimulationSettings many = one;
    many.workers = 4;
    BellRun run;
    run.cycles = 5;
    run.shots = 200;
    run.sample_points = {2, 5};
    auto a = run_bell_stabilization(run, one, 77);
    auto b = run_bell_stabilization(run, many, 77);
    EXPECT_EQ(a.records, b.records);
    ASSERT_EQ(a.fidelities.size(), b.fidelities.size());
    for (size_t i = 0; i < a.fidelities.size(); i++) {
        EXPECT_EQ(a.fidelities[i].fidelity, b.fidelities[i].fidelity);
        EXPECT_EQ(a.fidelities[i].exact_fidelity, b.fidelities[i].exact_fidelity);
    }
    auto c = run_bell_stabilization(run, one, 78);
    EXPECT_NE(a.records, c.records);
}

TEST(protocols, feedback_records_reproducible_for_equal_seeds) {
    SimulationSettings settings;
    settings.noise.gamma_dep = 0.1;
    StabilizationRun run;
    run.feedback = true;
    run.shots = 100;
    auto a = run_stabilization(run, settings, 9);
    auto b = run_stabilization(run, settings, 9);
    EXPECT_EQ(a.records, b.records);
    bool any_correction = false;
    for (const auto &rec : a.records) {
        for (const auto &e : rec.rounds) {
            EXPECT_TRUE(e.decision);
            any_correction |= !e.corrections.empty();
        }
    }
    EXPECT_TRUE(any_correction);
}

TEST(protocols, open_loop_records_carry_no_corrections) {
    SimulationSettings settings;
    settings.noise.gamma_dep = 0.2;
    StabilizationRun run;
    run.shots = 50;
    for (const auto &rec : run_stabilization(run, settings, 2).records) {
        for (const auto &e : rec.rounds) {
            EXPECT_FALSE(e.decision);
            EXPECT_TRUE(e.corrections.empty());
        }
    }
}

TEST(protocols, compensated_stark_shift_matches_unshifted_run) {
    SimulationSettings plain;
    plain.noise.gamma_dep = 0.05;
    SimulationSettings shifted = plain;
    shifted.stark = {0.0, 0.4, 0.3, 0.2, true};
    SimulationSettings uncompensated = shifted;
    uncompensated.stark.compensate = false;

    StabilizationRun run;
    run.basis = StabilizerBasis::X;
    run.feedback = true;
    run.shots = 600;
    run.rounds = 20;
    auto a = run_stabilization(run, plain, 31);
    auto b = run_stabilization(run, shifted, 31);
    auto c = run_stabilization(run, uncompensated, 31);
    int differing = 0;
    for (size_t k = 0; k < a.records.size(); k++) {
        differing += !(a.records[k] == b.records[k]);
    }
    // Paired seeds: the frame rotation changes nothing but float rounding.
    EXPECT_LE(differing, 3);
    double pa = 0, pc = 0;
    for (size_t i = 0; i < a.series.rows.size(); i++) {
        pa += a.series.rows[i].p_target();
        pc += c.series.rows[i].p_target();
    }
    EXPECT_GT(pa - pc, 1.0);
}

TEST(protocols, correction_fidelity_lowers_commuting_correlation) {
    SimulationSettings settings;
    settings.noise.readout_bias0 = 0.05;
    BellRun run;
    run.cycles = 25;
    run.shots = 2000;
    run.sample_points = {};
    auto ideal = run_bell_stabilization(run, settings, 12);
    run.correction_fidelity = 0.9;
    auto faulty = run_bell_stabilization(run, settings, 12);
    auto ti = correlation_analysis(ideal.records, StabilizerBasis::Z);
    auto tf = correlation_analysis(faulty.records, StabilizerBasis::Z);
    const auto &ri = ti[CorrectionCategory::CxOnly];
    const auto &rf = tf[CorrectionCategory::CxOnly];
    ASSERT_GT(ri.pairs, 1000);
    ASSERT_GT(rf.pairs, 1000);
    // A failed C_X fully twirls Be2, so Z parity survives with probability 1/2:
    // the commuting-category correlation drops by (1 - 0.9) / 2 relative to the ideal run.
    double drop = ri.correlation() - rf.correlation();
    double sigma = std::hypot(ri.stderr_correlation(), rf.stderr_correlation());
    EXPECT_NEAR(drop, 0.05 * ri.correlation(), 4 * sigma + 0.01);
}

TEST(protocols, bias_only_anticommuting_correlation_is_half) {
    SimulationSettings settings;
    settings.noise.readout_bias0 = 0.05;
    StabilizationRun run;
    run.feedback = true;
    run.shots = 2000;
    run.rounds = 50;
    auto r = run_stabilization(run, settings, 44);
    auto t = correlation_analysis(r.records, StabilizerBasis::Z);
    const auto &cz = t[CorrectionCategory::CzOnly];
    ASSERT_GT(cz.pairs, 3000);
    EXPECT_NEAR(cz.correlation(), 0.5, 0.05);
    EXPECT_GT(t[CorrectionCategory::None].correlation(), 0.85);
}
