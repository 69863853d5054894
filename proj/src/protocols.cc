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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qndsim/experiments.h"
#include "qndsim/parallel.h"

namespace qndsim {

namespace {

constexpr double kPi = std::numbers::pi;

// Stream tags for derive_seed, one per ensemble kind.
enum StreamTag : uint64_t {
    kStreamStabilization = 1,
    kStreamBell = 2,
    kStreamBellSample = 3,
    kStreamCharacterize = 4,
};

constexpr SubsystemSet kBePair{Subsystem::Be1, Subsystem::Be2};

// Readout blocks are rebuilt only when (basis, MS phase, carrier offset) changes.
const Unitary &cached_block(StabilizerBasis basis, double phi_b, double carrier) {
    struct Entry {
        StabilizerBasis basis;
        double phi_b;
        double carrier;
        Unitary block;
    };
    thread_local std::vector<Entry> cache;
    for (const auto &e : cache) {
        if (e.basis == basis && e.phi_b == phi_b && e.carrier == carrier) {
            return e.block;
        }
    }
    if (cache.size() >= 32) {
        cache.clear();
    }
    cache.push_back({basis, phi_b, carrier, build_stabilizer_unitary(basis, phi_b, carrier)});
    return cache.back().block;
}

const Unitary &cached_correction(CorrectionKind kind, double carrier) {
    struct Entry {
        CorrectionKind kind;
        double carrier;
        Unitary u;
    };
    thread_local std::vector<Entry> cache;
    for (const auto &e : cache) {
        if (e.kind == kind && e.carrier == carrier) {
            return e.u;
        }
    }
    if (cache.size() >= 32) {
        cache.clear();
    }
    cache.push_back({kind, carrier, correction_unitary(kind, carrier)});
    return cache.back().u;
}

// Common-mode Stark shift exp(-i delta Z / 2) on both Be qubits, identity on |L>.
RegisterState rotate_frame(const RegisterState &state, double delta) {
    std::array<cplx, 3> level_phase{std::polar(1.0, -delta / 2), std::polar(1.0, delta / 2), 1.0};
    Vec18 d;
    for (int i = 0; i < kDim; i++) {
        auto digits = basis_digits(i);
        d(i) = level_phase[digits[0]] * level_phase[digits[1]];
    }
    Mat18 rho = d.asDiagonal() * state.rho() * d.conjugate().asDiagonal();
    return RegisterState::trusted(rho);
}

RegisterState rotated_input() {
    RegisterState s = new_register(Level::Zero, Level::Zero, Level::Zero);
    return apply_unitary(s, rotation_half_pi(0.0, kBePair));
}

RegisterState maximally_mixed_be() {
    Mat18 rho = Mat18::Zero();
    for (int b1 = 0; b1 < 2; b1++) {
        for (int b2 = 0; b2 < 2; b2++) {
            rho(basis_index(b1, b2, 0), basis_index(b1, b2, 0)) = 0.25;
        }
    }
    return RegisterState::trusted(rho);
}

RegisterState bell_input(BellInput input) {
    return input == BellInput::Ground ? new_register(Level::Zero, Level::Zero, Level::Zero) : maximally_mixed_be();
}

void run_cycles(TrajectorySimulator &sim, const FeedbackPolicy &policy, int cycles, TrajectoryRecord *record) {
    for (int c = 0; c < cycles; c++) {
        RoundEntry z = sim.measure(StabilizerBasis::Z);
        RoundEntry x = sim.measure(StabilizerBasis::X);
        x.decision = true;
        x.corrections = feedback_decision(policy, {z.outcome.bit, x.outcome.bit});
        x.failed_corrections = sim.apply_corrections(x.corrections, policy);
        if (record) {
            record->rounds.push_back(std::move(z));
            record->rounds.push_back(std::move(x));
        }
    }
}

void check_positive(int value, const char *name) {
    if (value < 1) {
        throw std::invalid_argument(std::string(name) + " must be >= 1");
    }
}

// Aggregates classified bits per round in trajectory order.
RoundSeries aggregate(const std::vector<TrajectoryRecord> &records, int rounds,
                      const std::vector<int> &expected_bit_by_round) {
    RoundSeries series;
    series.rows.resize(rounds);
    for (int r = 0; r < rounds; r++) {
        auto &row = series.rows[r];
        row = {r + 1, StabilizerBasis::Z, 0, 0, 0};
        for (const auto &rec : records) {
            const RoundEntry &e = rec.rounds[r];
            row.basis = e.basis;
            row.shots++;
            row.ones += e.outcome.bit;
            row.on_target += e.outcome.bit == expected_bit_by_round[r] ? 1 : 0;
        }
    }
    return series;
}

}  // namespace

bool RoundEntry::operator==(const RoundEntry &o) const {
    return basis == o.basis && outcome.bit == o.outcome.bit && outcome.true_bit == o.outcome.true_bit &&
           outcome.counts == o.outcome.counts && outcome.round_index == o.outcome.round_index &&
           decision == o.decision && corrections == o.corrections && failed_corrections == o.failed_corrections &&
           leaks.be1 == o.leaks.be1 && leaks.be2 == o.leaks.be2;
}

TrajectorySimulator::TrajectorySimulator(const SimulationSettings &settings, const RegisterState &initial,
                                         uint64_t seed)
    : settings_(settings), state_(initial), rng_(seed), ledger_(PhaseLedger::standard()) {
}

double TrajectorySimulator::frame_offset() const {
    return ledger_.stark_offset(kBeCarrierChannel);
}

void TrajectorySimulator::apply_stark(StarkSource source) {
    double delta = settings_.stark.shift(source);
    if (delta == 0.0) {
        return;
    }
    state_ = rotate_frame(state_, delta);
    if (settings_.stark.compensate) {
        ledger_ = stark_update(ledger_, source, delta);
    }
}

void TrajectorySimulator::apply(const Unitary &u) {
    state_ = apply_unitary(state_, u);
}

RoundEntry TrajectorySimulator::measure(StabilizerBasis basis) {
    const NoiseParams &noise = settings_.noise;
    double phi_b = settings_.phi_b + ledger_.stark_offset(kBeGateChannel);
    apply(cached_block(basis, phi_b, frame_offset()));
    apply_stark(basis == StabilizerBasis::Z ? StarkSource::ReadoutZ : StarkSource::ReadoutX);
    state_ = depolarize(state_, noise.gamma_dep, noise.depolarize_support);

    RoundEntry entry;
    entry.basis = basis;
    auto m = measure_ancilla(state_, round_index_, noise, rng_);
    entry.outcome = m.outcome;
    state_ = reset_ancilla(m.state);

    entry.leaks = sample_leakage(rng_, noise.gamma_leak);
    if (entry.leaks.be1) {
        state_ = leak_ion(state_, Subsystem::Be1);
    }
    if (entry.leaks.be2) {
        state_ = leak_ion(state_, Subsystem::Be2);
    }
    round_index_++;
    return entry;
}

int TrajectorySimulator::apply_corrections(const std::vector<CorrectionKind> &corrections,
                                           const FeedbackPolicy &policy) {
    int failed = 0;
    for (CorrectionKind kind : corrections) {
        // One draw per correction keeps the random stream aligned across fidelity settings.
        bool ideal = rng_.uniform() < policy.correction_fidelity;
        if (ideal) {
            apply(cached_correction(kind, frame_offset()));
        } else {
            state_ = depolarize_ion(state_, Subsystem::Be2, policy.kick_strength);
            failed++;
        }
        apply_stark(kind == CorrectionKind::CZ ? StarkSource::CorrectionZ : StarkSource::CorrectionX);
    }
    return failed;
}

void TrajectorySimulator::rotate_be_pair(double phi) {
    apply(rotation_half_pi(phi + frame_offset(), kBePair));
}

std::array<int, 2> TrajectorySimulator::detect_be() {
    auto d = detect_be_direct(state_, settings_.noise, rng_);
    state_ = d.state;
    return d.bits;
}

StabilizationResult run_stabilization(const StabilizationRun &run, const SimulationSettings &settings,
                                      uint64_t seed) {
    check_positive(run.rounds, "rounds");
    check_positive(run.shots, "shots");
    if (run.target != 1 && run.target != -1) {
        throw std::invalid_argument("target must be +1 or -1");
    }
    FeedbackPolicy policy = run.feedback ? FeedbackPolicy::subspace(run.basis, run.target) : FeedbackPolicy::open_loop();
    policy.correction_fidelity = run.correction_fidelity;
    policy.kick_strength = run.kick_strength;
    RegisterState initial = run.feedback && run.feedback_input == FeedbackInput::Rotated
                                ? rotated_input()
                                : parity_eigenstate(run.basis, run.target);

    StabilizationResult result;
    result.records.resize(run.shots);
    parallel_for(run.shots, settings.workers, [&](size_t k) {
        uint64_t traj_seed = derive_seed(seed, {kStreamStabilization, k});
        TrajectorySimulator sim(settings, initial, traj_seed);
        TrajectoryRecord &rec = result.records[k];
        rec.seed = traj_seed;
        rec.rounds.reserve(run.rounds);
        for (int r = 0; r < run.rounds; r++) {
            RoundEntry e = sim.measure(run.basis);
            if (run.feedback) {
                RoundOutcomes o;
                (run.basis == StabilizerBasis::Z ? o.z_bit : o.x_bit) = e.outcome.bit;
                e.decision = true;
                e.corrections = feedback_decision(policy, o);
                e.failed_corrections = sim.apply_corrections(e.corrections, policy);
            }
            rec.rounds.push_back(std::move(e));
        }
    });
    std::vector<int> expected(run.rounds, eigenvalue_to_bit(run.target));
    result.series = aggregate(result.records, run.rounds, expected);
    return result;
}

RegisterState run_bell_cycles(const RegisterState &initial, BellLabel, int cycles, const SimulationSettings &settings,
                              const FeedbackPolicy &policy, uint64_t seed, TrajectoryRecord *record) {
    TrajectorySimulator sim(settings, initial, seed);
    if (record) {
        record->seed = seed;
    }
    run_cycles(sim, policy, cycles, record);
    return sim.state();
}

double bell_state_fidelity(const RegisterState &state, BellLabel target) {
    Eigen::MatrixXcd be = partial_trace(state, {Subsystem::Be1, Subsystem::Be2});
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
    switch (target) {
        case BellLabel::PhiPlus:
            psi(0) = r;
            psi(4) = r;
            break;
        case BellLabel::PhiMinus:
            psi(0) = r;
            psi(4) = -r;
            break;
        case BellLabel::PsiPlus:
            psi(1) = r;
            psi(3) = r;
            break;
        case BellLabel::PsiMinus:
            psi(1) = r;
            psi(3) = -r;
            break;
    }
    return (psi.adjoint() * be * psi)(0, 0).real();
}

int emulate_correlation_shot(TrajectorySimulator &sim, BellLabel target, AnalysisBasis basis) {
    if (target == BellLabel::PsiPlus || target == BellLabel::PsiMinus) {
        sim.apply(correction_unitary(CorrectionKind::CZ, sim.frame_offset()));
    }
    if (basis == AnalysisBasis::XX) {
        sim.rotate_be_pair(kPi / 2);
    } else if (basis == AnalysisBasis::YY) {
        sim.rotate_be_pair(0.0);
    }
    auto bits = sim.detect_be();
    return bits[0] == bits[1] ? 1 : -1;
}

BellResult run_bell_stabilization(const BellRun &run, const SimulationSettings &settings, uint64_t seed) {
    check_positive(run.cycles, "cycles");
    check_positive(run.shots, "shots");
    for (int c : run.sample_points) {
        if (c < 1 || c > run.cycles) {
            throw std::invalid_argument("sample point " + std::to_string(c) + " is outside [1, cycles]");
        }
    }
    FeedbackPolicy policy = FeedbackPolicy::bell(run.target);
    policy.correction_fidelity = run.correction_fidelity;
    policy.kick_strength = run.kick_strength;
    const RegisterState initial = bell_input(run.input);

    BellResult result;
    result.records.resize(run.shots);
    parallel_for(run.shots, settings.workers, [&](size_t k) {
        uint64_t traj_seed = derive_seed(seed, {kStreamBell, k});
        run_bell_cycles(initial, run.target, run.cycles, settings, policy, traj_seed, &result.records[k]);
    });
    std::vector<int> expected;
    auto eig = bell_eigenvalues(run.target);
    for (int c = 0; c < run.cycles; c++) {
        expected.push_back(eigenvalue_to_bit(eig.z));
        expected.push_back(eigenvalue_to_bit(eig.x));
    }
    result.series = aggregate(result.records, 2 * run.cycles, expected);

    // Analysis shots rotate through ZZ, XX, YY. The Psi targets are analysed after the
    // C_Z conversion to the matching Phi state.
    BellLabel analysed = run.target;
    if (run.target == BellLabel::PsiPlus) {
        analysed = BellLabel::PhiPlus;
    } else if (run.target == BellLabel::PsiMinus) {
        analysed = BellLabel::PhiMinus;
    }
    for (int cycle : run.sample_points) {
        std::vector<int> corr(run.shots);
        std::vector<double> exact(run.shots);
        parallel_for(run.shots, settings.workers, [&](size_t k) {
            uint64_t traj_seed = derive_seed(seed, {kStreamBellSample, uint64_t(cycle), k});
            TrajectorySimulator sim(settings, initial, traj_seed);
            run_cycles(sim, policy, cycle, nullptr);
            exact[k] = bell_state_fidelity(sim.state(), run.target);
            corr[k] = emulate_correlation_shot(sim, run.target, AnalysisBasis(k % 3));
        });
        std::array<double, 3> sum{};
        std::array<int, 3> count{};
        double exact_sum = 0.0;
        for (int k = 0; k < run.shots; k++) {
            sum[k % 3] += corr[k];
            count[k % 3]++;
            exact_sum += exact[k];
        }
        std::array<double, 3> mean{};
        double var = 0.0;
        for (int b = 0; b < 3; b++) {
            mean[b] = count[b] ? sum[b] / count[b] : 0.0;
            var += count[b] ? (1.0 - mean[b] * mean[b]) / count[b] : 0.0;
        }
        FidelitySample s;
        s.cycle = cycle;
        s.shots = run.shots;
        s.zz = mean[0];
        s.xx = mean[1];
        s.yy = mean[2];
        s.fidelity = bell_fidelity_from_correlations(s.zz, s.xx, s.yy, analysed);
        s.stderr_fidelity = std::sqrt(var) / 4.0;
        s.exact_fidelity = exact_sum / run.shots;
        result.fidelities.push_back(s);
    }
    return result;
}

CharacterizationTable run_single_round(const std::vector<double> &theta_grid, int shots,
                                       const SimulationSettings &settings, uint64_t seed) {
    check_positive(shots, "shots");
    CharacterizationTable table;
    for (size_t t = 0; t < theta_grid.size(); t++) {
        const double theta = theta_grid[t];
        const RegisterState input = prepare_input(theta);
        // Per shot: reference parity, Ca bit, parity after the measurement.
        std::vector<std::array<int, 3>> shot(shots);
        parallel_for(shots, settings.workers, [&](size_t k) {
            TrajectorySimulator ref(settings, input, derive_seed(seed, {kStreamCharacterize, t, k, 0}));
            auto ref_bits = ref.detect_be();
            TrajectorySimulator sim(settings, input, derive_seed(seed, {kStreamCharacterize, t, k, 1}));
            RoundEntry e = sim.measure(StabilizerBasis::Z);
            auto bits = sim.detect_be();
            shot[k] = {ref_bits[0] == ref_bits[1] ? 1 : -1, e.outcome.bit, bits[0] == bits[1] ? 1 : -1};
        });
        CharacterizationRow row{theta, shots, 0, 0, 0, 0, 0, 0, 0, 0};
        for (const auto &s : shot) {
            (s[0] == 1 ? row.in_plus : row.in_minus)++;
            (s[1] == 1 ? row.m_one : row.m_zero)++;
            if (s[2] == 1) {
                (s[1] == 1 ? row.plus_one : row.plus_zero)++;
            } else {
                (s[1] == 1 ? row.minus_one : row.minus_zero)++;
            }
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace qndsim
