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

#ifndef QNDSIM_CONTROLLER_H
#define QNDSIM_CONTROLLER_H

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qndsim/gates.h"

namespace qndsim {

/// A +1 stabilizer eigenvalue reads out as Ca bit 1 (dark), -1 as bit 0.
inline constexpr int kBitForPlusOne = 1;

constexpr int eigenvalue_to_bit(int eigenvalue) {
    return eigenvalue == 1 ? kBitForPlusOne : 1 - kBitForPlusOne;
}
constexpr int bit_to_eigenvalue(int bit) {
    return bit == kBitForPlusOne ? 1 : -1;
}

enum class FeedbackMode : uint8_t { None, StabilizeZ, StabilizeX, StabilizeBell };

struct FeedbackPolicy {
    FeedbackMode mode = FeedbackMode::None;
    /// Target eigenvalues; target_z is used by StabilizeZ and Bell, target_x by StabilizeX and Bell.
    int target_z = 1;
    int target_x = 1;
    /// Probability that a commanded correction applies the ideal unitary. Otherwise the
    /// addressed ion (Be2) receives a depolarizing kick of `kick_strength` instead.
    double correction_fidelity = 1.0;
    double kick_strength = 1.0;

    static FeedbackPolicy open_loop();
    static FeedbackPolicy subspace(StabilizerBasis basis, int target);
    static FeedbackPolicy bell(BellLabel label);

    std::vector<std::string> violations() const;
};

/// Classified ancilla bits of the current round (or cycle), by basis.
struct RoundOutcomes {
    std::optional<int> z_bit;
    std::optional<int> x_bit;
};

/// Corrections to apply, in order. Bell mode emits C_Z before C_X. Throws
/// std::invalid_argument when an outcome the policy needs is missing.
std::vector<CorrectionKind> feedback_decision(const FeedbackPolicy &policy, const RoundOutcomes &outcomes);

/// Operations that produce a Stark shift on the Be qubits.
enum class StarkSource : uint8_t { ReadoutZ, ReadoutX, CorrectionZ, CorrectionX };

/// Channel labels used by the simulation.
inline constexpr const char *kBeCarrierChannel = "be_co";
inline constexpr const char *kBeGateChannel = "be_90";
inline constexpr const char *kCaChannel = "ca_729";

/// Phase bookkeeping for each rf channel: phi = omega (t - t_start) + stark_offset.
class PhaseLedger {
   public:
    struct Channel {
        std::string label;
        double omega;
        double t_start;
        /// Experiment start time; reset_reference returns t_start here.
        double t_origin;
        double stark_offset;
    };

    PhaseLedger() = default;
    /// Channels for the Be carrier, Be MS/90 and Ca beams, all referenced to t = 0.
    static PhaseLedger standard(double omega_be_co = 0.0, double omega_be_90 = 0.0, double omega_ca = 0.0);

    /// Throws std::invalid_argument for a duplicate label or negative omega.
    PhaseLedger with_channel(std::string label, double omega, double t_start) const;

    /// omega (t - t_start) + stark_offset, wrapped to [0, 2 pi).
    double phase_resolve(const std::string &channel, double t) const;
    PhaseLedger shift_reference(const std::string &channel, double new_t_start) const;
    /// Moves t_start back to the experiment start time.
    PhaseLedger reset_reference(const std::string &channel) const;
    /// stark_offset += delta on one channel.
    PhaseLedger add_offset(const std::string &channel, double delta) const;

    double stark_offset(const std::string &channel) const;
    const Channel &channel(const std::string &label) const;
    const std::vector<Channel> &channels() const {
        return channels_;
    }

   private:
    Channel &find(const std::string &label);
    std::vector<Channel> channels_;
};

/// Records a Stark shift of `delta` radians from `source` on every Be channel present
/// in the ledger. delta = 0 leaves the ledger unchanged.
PhaseLedger stark_update(const PhaseLedger &ledger, StarkSource source, double delta);

/// Configured physical Stark shift per operation kind, and whether the ledger compensates it.
struct StarkShifts {
    double readout_z = 0.0;
    double readout_x = 0.0;
    double correction_z = 0.0;
    double correction_x = 0.0;
    bool compensate = true;

    double shift(StarkSource source) const;
    bool any() const {
        return readout_z != 0.0 || readout_x != 0.0 || correction_z != 0.0 || correction_x != 0.0;
    }
};

struct ScheduledPulse {
    std::string channel;
    /// Start time relative to the block start.
    double offset;
};

/// Phases of a pulse block placed at `block_start`. Each channel's reference is moved
/// to `block_start - lead` for the block and then reset, so the returned phases do not
/// depend on where the block sits in the sequence.
std::vector<double> block_pulse_phases(const PhaseLedger &ledger, std::span<const ScheduledPulse> pulses,
                                       double block_start, double lead);

double wrap_phase(double phi);

}  // namespace qndsim

#endif
