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

#include "qndsim/noise.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qndsim {

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

bool is_probability(double p) {
    return std::isfinite(p) && p >= 0.0 && p <= 1.0;
}

// Leak sector of a basis index: bit 0 set when Be1 leaked, bit 1 when Be2 leaked.
int sector_of(int index) {
    auto d = basis_digits(index);
    return (d[0] == 2 ? 1 : 0) | (d[1] == 2 ? 2 : 0);
}

// Index with the Ca digit cleared.
int be_part(int index) {
    return index - index % kCaLevels;
}

}  // namespace

std::vector<std::string> NoiseParams::violations() const {
    std::vector<std::string> out;
    auto prob = [&](const char *name, double v) {
        if (!is_probability(v)) {
            out.push_back(std::string("noise.") + name + " = " + format_value(v) + " is outside [0, 1]");
        }
    };
    prob("gamma_dep", gamma_dep);
    prob("gamma_leak", gamma_leak);
    prob("readout_bias0", readout_bias0);
    prob("det_error_be", det_error_be);
    if (!std::isfinite(readout_drift) || readout_drift < 0.0 || readout_drift > 1.0) {
        out.push_back("noise.readout_drift = " + format_value(readout_drift) + " is outside [0, 1]");
    }
    if (!std::isfinite(photon_mean_bright) || photon_mean_bright < 0.0) {
        out.push_back("noise.photon_mean_bright must be >= 0");
    }
    if (!std::isfinite(photon_mean_dark) || photon_mean_dark < 0.0) {
        out.push_back("noise.photon_mean_dark must be >= 0");
    }
    if (photon_threshold < 0) {
        out.push_back("noise.photon_threshold must be >= 0");
    }
    return out;
}

RegisterState depolarize(const RegisterState &state, double gamma, DepolarizeSupport support) {
    if (!is_probability(gamma)) {
        throw std::invalid_argument("depolarizing probability " + std::to_string(gamma) + " is outside [0, 1]");
    }
    if (gamma == 0.0) {
        return state;
    }
    const Mat18 &rho = state.rho();
    Mat18 mixed = Mat18::Zero();
    std::array<int, 4> sector_size{};
    for (int i = 0; i < kDim; i++) {
        sector_size[sector_of(i)]++;
    }
    if (support == DepolarizeSupport::Register) {
        std::array<double, 4> weight{};
        for (int i = 0; i < kDim; i++) {
            weight[sector_of(i)] += rho(i, i).real();
        }
        for (int i = 0; i < kDim; i++) {
            int s = sector_of(i);
            mixed(i, i) = weight[s] / sector_size[s];
        }
    } else {
        // Per sector: (I_Be / d_Be) (x) Ca block summed over the Be qubit configurations.
        std::array<Mat2, 4> ca_block;
        for (auto &m : ca_block) {
            m.setZero();
        }
        for (int b = 0; b < kDim; b += kCaLevels) {
            for (int c = 0; c < kCaLevels; c++) {
                for (int c2 = 0; c2 < kCaLevels; c2++) {
                    ca_block[sector_of(b)](c, c2) += rho(b + c, b + c2);
                }
            }
        }
        for (int i = 0; i < kDim; i++) {
            int s = sector_of(i);
            double be_dim = double(sector_size[s]) / kCaLevels;
            int b = be_part(i);
            for (int c2 = 0; c2 < kCaLevels; c2++) {
                mixed(i, b + c2) = ca_block[s](i - b, c2) / be_dim;
            }
        }
    }
    Mat18 out = (1.0 - gamma) * rho + gamma * mixed;
    return RegisterState::trusted((out + out.adjoint()) * 0.5);
}

RegisterState depolarize_ion(const RegisterState &state, Subsystem ion, double strength) {
    if (ion == Subsystem::Ca) {
        throw std::invalid_argument("depolarize_ion acts on a Be ion");
    }
    if (!is_probability(strength)) {
        throw std::invalid_argument("kick strength " + std::to_string(strength) + " is outside [0, 1]");
    }
    if (strength == 0.0) {
        return state;
    }
    const Mat18 &rho = state.rho();
    Mat18 twirl = rho;
    for (const Mat2 &p : {pauli_x(), pauli_y(), pauli_z()}) {
        Mat18 u = embed(p, ion, 1.0);
        twirl += u * rho * u.adjoint();
    }
    Mat18 out = (1.0 - strength) * rho + strength * 0.25 * twirl;
    return RegisterState::trusted((out + out.adjoint()) * 0.5);
}

RegisterState leak_ion(const RegisterState &state, Subsystem ion) {
    if (ion == Subsystem::Ca) {
        throw std::invalid_argument("only Be ions can leak");
    }
    const int slot = int(ion);
    const Mat18 &rho = state.rho();
    Mat18 out = Mat18::Zero();
    for (int i = 0; i < kDim; i++) {
        auto di = basis_digits(i);
        for (int j = 0; j < kDim; j++) {
            auto dj = basis_digits(j);
            if (di[slot] != dj[slot]) {
                continue;
            }
            auto ti = di;
            auto tj = dj;
            ti[slot] = 2;
            tj[slot] = 2;
            out(basis_index(ti[0], ti[1], ti[2]), basis_index(tj[0], tj[1], tj[2])) += rho(i, j);
        }
    }
    return RegisterState::trusted(out);
}

LeakEvents sample_leakage(Rng &rng, double gamma_leak) {
    LeakEvents e;
    e.be1 = rng.bernoulli(gamma_leak);
    e.be2 = rng.bernoulli(gamma_leak);
    return e;
}

double readout_bias(int round_index, const NoiseParams &params) {
    if (round_index < 0) {
        throw std::invalid_argument("round index must be >= 0");
    }
    return std::clamp(params.readout_bias0 + params.readout_drift * round_index, 0.0, 0.5);
}

}  // namespace qndsim
