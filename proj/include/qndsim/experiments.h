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

#ifndef QNDSIM_EXPERIMENTS_H
#define QNDSIM_EXPERIMENTS_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qndsim/controller.h"
#include "qndsim/gates.h"
#include "qndsim/noise.h"
#include "qndsim/readout.h"

namespace qndsim {

//-----------------------------------------------------------------------------
// Records
//-----------------------------------------------------------------------------

struct RoundEntry {
    StabilizerBasis basis = StabilizerBasis::Z;
    MeasurementOutcome outcome;
    /// True when a feedback decision was taken right after this measurement.
    bool decision = false;
    /// Corrections commanded by that decision, in application order.
    std::vector<CorrectionKind> corrections;
    /// Commanded corrections that fell back to the error model.
    int failed_corrections = 0;
    LeakEvents leaks;

    bool operator==(const RoundEntry &other) const;
};

struct TrajectoryRecord {
    uint64_t seed = 0;
    std::vector<RoundEntry> rounds;
    std::optional<std::array<int, 2>> terminal_bits;

    bool operator==(const TrajectoryRecord &other) const = default;
};

/// Per-round ancilla statistics over an ensemble.
struct RoundSeries {
    struct Row {
        int round;
        StabilizerBasis basis;
        int shots;
        int ones;
        /// Shots whose classified bit matched the expected eigenvalue.
        int on_target;
        double p_one() const;
        double p_zero() const;
        double p_target() const;
        /// sqrt(p (1 - p) / N) for p_target.
        double stderr_target() const;
    };
    std::vector<Row> rows;

    std::vector<double> target_probabilities() const;
};

/// Binomial standard error sqrt(p (1 - p) / n); 0 when n == 0.
double binomial_stderr(double p, int n);

//-----------------------------------------------------------------------------
// Estimators
//-----------------------------------------------------------------------------

struct Distribution2 {
    double plus;   // E = +1, or Ca |1>
    double minus;  // E = -1, or Ca |0>
};

/// (sqrt(p_in(+1) p_m(|1>)) + sqrt(p_in(-1) p_m(|0>)))^2. Throws on negative entries.
double fidelity_nd(Distribution2 p_in, Distribution2 p_m);

/// p_m(|1>) p_out(|1>,+1) + p_m(|0>) p_out(|0>,-1). Throws on entries outside [0, 1].
double fidelity_qsp(Distribution2 p_m, Distribution2 p_out);

/// (1 + s_z zz + s_x xx + s_y yy) / 4 with the target's Pauli sign pattern.
double bell_fidelity_from_correlations(double zz, double xx, double yy, BellLabel label);

/// <ZZ>, <XX>, <YY> of the Be pair in a Bell state.
std::array<int, 3> bell_correlation_signs(BellLabel label);

//-----------------------------------------------------------------------------
// Simulation
//-----------------------------------------------------------------------------

enum class FeedbackInput : uint8_t {
    /// R_{pi/2}(0) on both Be ions from |00>: equal weight in both subspaces.
    Rotated,
    /// Stabilizer eigenstate with the target eigenvalue.
    Eigenstate,
};

enum class BellInput : uint8_t { Ground, MaximallyMixed };

struct SimulationSettings {
    NoiseParams noise;
    /// MS beam phase; readout statistics do not depend on it.
    double phi_b = 0.0;
    StarkShifts stark;
    /// Worker threads; results do not depend on this. <= 0 uses all cores.
    int workers = 1;
};

/// One Monte-Carlo density-matrix trajectory of the register.
class TrajectorySimulator {
   public:
    TrajectorySimulator(const SimulationSettings &settings, const RegisterState &initial, uint64_t seed);

    /// Readout block, Stark shift, depolarization, ancilla projection with the
    /// round-indexed bias, ancilla reset, then leakage sampling.
    RoundEntry measure(StabilizerBasis basis);

    /// Applies corrections in order using the policy's error model. Returns how many failed.
    int apply_corrections(const std::vector<CorrectionKind> &corrections, const FeedbackPolicy &policy);

    /// Common Be pi/2 pulse in the current compensated frame.
    void rotate_be_pair(double phi);
    void apply(const Unitary &u);
    /// Direct detection of both Be ions; the register collapses onto the found levels.
    std::array<int, 2> detect_be();

    const RegisterState &state() const {
        return state_;
    }
    int rounds_done() const {
        return round_index_;
    }
    /// Frame offset currently applied to Be pulses.
    double frame_offset() const;
    Rng &rng() {
        return rng_;
    }

   private:
    void apply_stark(StarkSource source);

    const SimulationSettings &settings_;
    RegisterState state_;
    Rng rng_;
    PhaseLedger ledger_;
    int round_index_ = 0;
};

struct StabilizationRun {
    StabilizerBasis basis = StabilizerBasis::Z;
    bool feedback = false;
    /// Eigenvalue to stabilize (feedback) or of the input eigenstate (open loop).
    int target = 1;
    int rounds = 50;
    int shots = 2000;
    FeedbackInput feedback_input = FeedbackInput::Rotated;
    double correction_fidelity = 1.0;
    double kick_strength = 1.0;
};

struct StabilizationResult {
    RoundSeries series;
    std::vector<TrajectoryRecord> records;
};

StabilizationResult run_stabilization(const StabilizationRun &run, const SimulationSettings &settings,
                                      uint64_t seed);

struct BellRun {
    BellLabel target = BellLabel::PhiPlus;
    int cycles = 25;
    int shots = 2000;
    BellInput input = BellInput::Ground;
    /// Cycles after which a fresh ensemble is stopped and analysed.
    std::vector<int> sample_points{1, 25};
    double correction_fidelity = 1.0;
    double kick_strength = 1.0;
};

struct FidelitySample {
    int cycle;
    int shots;
    double zz;
    double xx;
    double yy;
    /// From the emulated three-basis Be detection.
    double fidelity;
    double stderr_fidelity;
    /// Ensemble mean of <target| rho_Be |target>.
    double exact_fidelity;
};

struct BellResult {
    RoundSeries series;
    std::vector<FidelitySample> fidelities;
    std::vector<TrajectoryRecord> records;
};

BellResult run_bell_stabilization(const BellRun &run, const SimulationSettings &settings, uint64_t seed);

/// Runs `cycles` measure-and-correct cycles from `initial` and returns the final state.
RegisterState run_bell_cycles(const RegisterState &initial, BellLabel target, int cycles,
                              const SimulationSettings &settings, const FeedbackPolicy &policy, uint64_t seed,
                              TrajectoryRecord *record = nullptr);

/// <target| rho_Be |target> on the Be qubit block.
double bell_state_fidelity(const RegisterState &state, BellLabel target);

/// Which correlation the emulated Be analysis measures.
enum class AnalysisBasis : uint8_t { ZZ, XX, YY };

/// Applies the analysis pulses for `basis` (preceded by C_Z for Psi targets), then
/// detects both ions directly. Returns +1 when the two bits agree, -1 otherwise.
int emulate_correlation_shot(TrajectorySimulator &sim, BellLabel target, AnalysisBasis basis);

struct CharacterizationRow {
    double theta;
    int shots;
    // Reference experiment (no parity measurement): Be parity counts.
    int in_plus;
    int in_minus;
    // Parity measurement followed by direct Be detection.
    int m_one;
    int m_zero;
    int plus_one;    // Be +1 and Ca |1>
    int minus_zero;  // Be -1 and Ca |0>
    int plus_zero;   // Be +1 and Ca |0>
    int minus_one;   // Be -1 and Ca |1>

    Distribution2 p_in() const;
    Distribution2 p_m() const;
    /// p_out(|1>,+1), p_out(|0>,-1); 0 when the conditioning outcome never occurred.
    Distribution2 p_out() const;
    double f_nd() const;
    double f_qsp() const;
};

struct CharacterizationTable {
    std::vector<CharacterizationRow> rows;
    double mean_f_nd() const;
    double mean_f_qsp() const;
};

CharacterizationTable run_single_round(const std::vector<double> &theta_grid, int shots,
                                       const SimulationSettings &settings, uint64_t seed);

//-----------------------------------------------------------------------------
// Fits
//-----------------------------------------------------------------------------

struct DecayFit {
    double rate = 0.0;
    double rate_stderr = 0.0;
    /// Exponential amplitude, or the linear fit's value at the second round minus 0.5.
    double amplitude = 0.0;
    double slope = 0.0;
    bool converged = false;
    std::string message;
};

/// Least squares p(n) = 0.5 + A exp(-rate n) over the series rounds. Needs >= 5 rounds.
DecayFit fit_open_loop(const RoundSeries &series);

/// Linear fit to rounds 2..N; rate = |slope| / (fitted p(2) - 0.5). Needs >= 5 rounds.
DecayFit fit_closed_loop(const RoundSeries &series);

//-----------------------------------------------------------------------------
// Correlation analyses
//-----------------------------------------------------------------------------

enum class CorrectionCategory : uint8_t { None, CxOnly, CzOnly, Both };
std::string to_string(CorrectionCategory category);

struct CorrelationRow {
    CorrectionCategory category;
    int pairs;
    int equal;
    /// P(equal outcomes); 1 = perfect correlation, 0 = perfect anti-correlation.
    double correlation() const;
    double stderr_correlation() const;
    bool empty() const {
        return pairs == 0;
    }
};

struct CorrelationTable {
    StabilizerBasis basis;
    std::array<CorrelationRow, 4> rows;
    const CorrelationRow &operator[](CorrectionCategory c) const {
        return rows[size_t(c)];
    }
};

/// Consecutive same-basis outcome pairs grouped by the corrections applied between them.
/// Pairs whose first measurement is among the first `skip_leading` of that basis in a
/// trajectory are skipped.
CorrelationTable correlation_analysis(const std::vector<TrajectoryRecord> &records, StabilizerBasis basis,
                                      int skip_leading = 1);

struct ConditionalFeedbackRow {
    /// Index i of the conditioning decision (1-based).
    int decision;
    int after_feedback;       // trajectories with feedback at i
    int feedback_twice;       // ... and again at i + 1
    int after_no_feedback;    // trajectories without feedback at i
    int feedback_after_none;  // ... and feedback at i + 1
    double p_again() const;   // P(0_{i+1} | 0_i)
    double p_after_none() const;  // P(0_{i+1} | 1_i)
    double stderr_again() const;
    double stderr_after_none() const;
    /// A conditioning count below 20.
    bool sparse() const;
};

struct ConditionalFeedbackStats {
    std::vector<ConditionalFeedbackRow> rows;
    /// All decisions pooled.
    ConditionalFeedbackRow pooled;
    std::vector<std::string> warnings;
};

ConditionalFeedbackStats conditional_feedback_stats(const std::vector<TrajectoryRecord> &records);

inline constexpr int kSparseEventThreshold = 20;

}  // namespace qndsim

#endif
