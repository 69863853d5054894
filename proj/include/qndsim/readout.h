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

#ifndef QNDSIM_READOUT_H
#define QNDSIM_READOUT_H

#include <array>
#include <optional>

#include "qndsim/noise.h"
#include "qndsim/qstate.h"
#include "qndsim/rng.h"

namespace qndsim {

// Bit convention for every detection: 0 = bright (fluorescing), 1 = dark.
// Ca |0> (S state) is bright and Ca |1> (D state) is dark; Be |0> reads bright, Be |1> dark.

struct MeasurementOutcome {
    /// Classified result after readout bias.
    int bit = 0;
    /// Projective outcome before classification errors.
    int true_bit = 0;
    std::optional<int> counts;
    int round_index = 0;
};

struct AncillaMeasurement {
    MeasurementOutcome outcome;
    RegisterState state;
};

/// Born-samples the Ca ion, collapses the register, then flips the classified bit with
/// probability readout_bias(round_index). In photon-count mode the bit comes from
/// photon_count_classify before the bias flip.
/// Throws std::domain_error when neither outcome has probability above 1e-12.
AncillaMeasurement measure_ancilla(const RegisterState &state, int round_index, const NoiseParams &params, Rng &rng);

/// Probability that the Ca ion is found in |1>.
double ancilla_one_probability(const RegisterState &state);

/// Traces out Ca and re-prepares it in |0> (optical pumping).
RegisterState reset_ancilla(const RegisterState &state);

struct PhotonClassification {
    int counts;
    int bit;
};

/// Poisson counts with the bright or dark mean; bit = 1 (dark) iff counts <= photon_threshold.
PhotonClassification photon_count_classify(bool true_bright, const NoiseParams &params, Rng &rng);

struct BeDetection {
    std::array<int, 2> bits;
    /// Per-ion level found by the projection: 0, 1 or 2 (leaked).
    std::array<int, 2> levels;
    RegisterState state;
};

/// Joint projective measurement of both Be ions over {|0>, |1>, |L>}. Each qubit bit
/// flips independently with probability det_error_be; leaked ions read dark (or bright
/// if leaked_reads_dark is false) without flips.
BeDetection detect_be_direct(const RegisterState &state, const NoiseParams &params, Rng &rng);

}  // namespace qndsim

#endif
