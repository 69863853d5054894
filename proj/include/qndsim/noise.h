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

#ifndef QNDSIM_NOISE_H
#define QNDSIM_NOISE_H

#include <string>
#include <vector>

#include "qndsim/qstate.h"
#include "qndsim/rng.h"

namespace qndsim {

/// Which qubit blocks the depolarizing channel replaces with the maximally mixed state.
enum class DepolarizeSupport : uint8_t {
    Register,  // Be1, Be2 and Ca qubits (8-dim block when nothing leaked)
    BePair,    // Be qubits only; the Ca reduced state is kept
};

struct NoiseParams {
    /// Depolarization probability per measurement round.
    double gamma_dep = 0.0;
    /// Leakage probability per Be ion per measurement round.
    double gamma_leak = 0.0;
    /// Readout bias grows linearly with the round index.
    double readout_drift = 0.0;
    double readout_bias0 = 0.0;
    /// Flip probability of each directly detected Be bit.
    double det_error_be = 0.0;
    double photon_mean_bright = 25.0;
    double photon_mean_dark = 0.2;
    int photon_threshold = 5;
    /// Classify the ancilla from simulated photon counts instead of Born sampling alone.
    bool use_photon_counts = false;
    DepolarizeSupport depolarize_support = DepolarizeSupport::Register;
    /// Leaked Be ions classify as dark (bit 1) in direct detection; bright otherwise.
    bool leaked_reads_dark = true;

    /// One message per violated constraint, naming the field.
    std::vector<std::string> violations() const;
};

/// rho -> (1 - gamma) rho + gamma M(rho), where M replaces the qubit block of each
/// leak sector by the maximally mixed state with the same weight. Leak populations
/// are untouched. Throws std::invalid_argument for gamma outside [0, 1].
RegisterState depolarize(const RegisterState &state, double gamma,
                         DepolarizeSupport support = DepolarizeSupport::Register);

/// Single-ion depolarizing kick on a Be qubit: (1 - s) rho + s (rho + X rho X + Y rho Y + Z rho Z) / 4.
RegisterState depolarize_ion(const RegisterState &state, Subsystem ion, double strength);

/// rho -> |L><L|_ion (x) tr_ion(rho). Idempotent.
RegisterState leak_ion(const RegisterState &state, Subsystem ion);

struct LeakEvents {
    bool be1 = false;
    bool be2 = false;
    bool any() const {
        return be1 || be2;
    }
};

/// Each Be ion independently leaks with probability gamma_leak.
LeakEvents sample_leakage(Rng &rng, double gamma_leak);

/// bias0 + drift * round_index, clamped to [0, 0.5].
double readout_bias(int round_index, const NoiseParams &params);

}  // namespace qndsim

#endif
