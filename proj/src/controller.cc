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

#include "qndsim/controller.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qndsim {

FeedbackPolicy FeedbackPolicy::open_loop() {
    return {};
}

FeedbackPolicy FeedbackPolicy::subspace(StabilizerBasis basis, int target) {
    FeedbackPolicy p;
    if (basis == StabilizerBasis::Z) {
        p.mode = FeedbackMode::StabilizeZ;
        p.target_z = target;
    } else {
        p.mode = FeedbackMode::StabilizeX;
        p.target_x = target;
    }
    return p;
}

FeedbackPolicy FeedbackPolicy::bell(BellLabel label) {
    FeedbackPolicy p;
    p.mode = FeedbackMode::StabilizeBell;
    auto e = bell_eigenvalues(label);
    p.target_z = e.z;
    p.target_x = e.x;
    return p;
}

std::vector<std::string> FeedbackPolicy::violations() const {
    std::vector<std::string> out;
    if (target_z != 1 && target_z != -1) {
        out.push_back("target_z must be +1 or -1");
    }
    if (target_x != 1 && target_x != -1) {
        out.push_back("target_x must be +1 or -1");
    }
    if (!(correction_fidelity >= 0.0 && correction_fidelity <= 1.0)) {
        out.push_back("correction_fidelity must be in [0, 1]");
    }
    if (!(kick_strength >= 0.0 && kick_strength <= 1.0)) {
        out.push_back("kick_strength must be in [0, 1]");
    }
    return out;
}

std::vector<CorrectionKind> feedback_decision(const FeedbackPolicy &policy, const RoundOutcomes &outcomes) {
    auto need = [](const std::optional<int> &bit, const char *basis) {
        if (!bit) {
            throw std::invalid_argument(std::string("feedback needs the ") + basis + " outcome");
        }
        return *bit;
    };
    std::vector<CorrectionKind> out;
    bool check_z = policy.mode == FeedbackMode::StabilizeZ || policy.mode == FeedbackMode::StabilizeBell;
    bool check_x = policy.mode == FeedbackMode::StabilizeX || policy.mode == FeedbackMode::StabilizeBell;
    if (check_z && need(outcomes.z_bit, "Z") != eigenvalue_to_bit(policy.target_z)) {
        out.push_back(CorrectionKind::CZ);
    }
    if (check_x && need(outcomes.x_bit, "X") != eigenvalue_to_bit(policy.target_x)) {
        out.push_back(CorrectionKind::CX);
    }
    return out;
}

double wrap_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double w = std::fmod(phi, two_pi);
    if (w < 0.0) {
        w += two_pi;
    }
    return w >= two_pi ? 0.0 : w;
}

PhaseLedger PhaseLedger::standard(double omega_be_co, double omega_be_90, double omega_ca) {
    return PhaseLedger()
        .with_channel(kBeCarrierChannel, omega_be_co, 0.0)
        .with_channel(kBeGateChannel, omega_be_90, 0.0)
        .with_channel(kCaChannel, omega_ca, 0.0);
}

PhaseLedger PhaseLedger::with_channel(std::string label, double omega, double t_start) const {
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("channel '" + label + "' needs a finite omega >= 0");
    }
    for (const auto &c : channels_) {
        if (c.label == label) {
            throw std::invalid_argument("duplicate channel '" + label + "'");
        }
    }
    PhaseLedger out = *this;
    out.channels_.push_back({std::move(label), omega, t_start, t_start, 0.0});
    return out;
}

const PhaseLedger::Channel &PhaseLedger::channel(const std::string &label) const {
    for (const auto &c : channels_) {
        if (c.label == label) {
            return c;
        }
    }
    throw std::invalid_argument("unknown channel '" + label + "'");
}

PhaseLedger::Channel &PhaseLedger::find(const std::string &label) {
    return const_cast<Channel &>(std::as_const(*this).channel(label));
}

double PhaseLedger::phase_resolve(const std::string &label, double t) const {
    const Channel &c = channel(label);
    return wrap_phase(c.omega * (t - c.t_start) + c.stark_offset);
}

PhaseLedger PhaseLedger::shift_reference(const std::string &label, double new_t_start) const {
    PhaseLedger out = *this;
    out.find(label).t_start = new_t_start;
    return out;
}

PhaseLedger PhaseLedger::reset_reference(const std::string &label) const {
    PhaseLedger out = *this;
    Channel &c = out.find(label);
    c.t_start = c.t_origin;
    return out;
}

PhaseLedger PhaseLedger::add_offset(const std::string &label, double delta) const {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("Stark offset must be finite");
    }
    PhaseLedger out = *this;
    out.find(label).stark_offset += delta;
    return out;
}

double PhaseLedger::stark_offset(const std::string &label) const {
    return channel(label).stark_offset;
}

PhaseLedger stark_update(const PhaseLedger &ledger, StarkSource, double delta) {
    if (!std::isfinite(delta)) {
        throw std::invalid_argument("Stark shift must be finite");
    }
    if (delta == 0.0) {
        return ledger;
    }
    // A Stark shift moves the Be qubit frame, so every Be beam follows it.
    PhaseLedger out = ledger;
    for (const auto &c : ledger.channels()) {
        if (c.label == kBeCarrierChannel || c.label == kBeGateChannel) {
            out = out.add_offset(c.label, delta);
        }
    }
    return out;
}

double StarkShifts::shift(StarkSource source) const {
    switch (source) {
        case StarkSource::ReadoutZ:
            return readout_z;
        case StarkSource::ReadoutX:
            return readout_x;
        case StarkSource::CorrectionZ:
            return correction_z;
        case StarkSource::CorrectionX:
            return correction_x;
    }
    return 0.0;
}

std::vector<double> block_pulse_phases(const PhaseLedger &ledger, std::span<const ScheduledPulse> pulses,
                                       double block_start, double lead) {
    PhaseLedger shifted = ledger;
    for (const auto &p : pulses) {
        shifted = shifted.shift_reference(p.channel, block_start - lead);
    }
    std::vector<double> out;
    out.reserve(pulses.size());
    for (const auto &p : pulses) {
        out.push_back(shifted.phase_resolve(p.channel, block_start + p.offset));
    }
    return out;
}

}  // namespace qndsim
