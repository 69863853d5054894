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

#include "qndsim/readout.h"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qndsim {

namespace {

constexpr double kMinProbability = 1e-12;

// Keeps rows/columns whose basis index satisfies `keep`, renormalized by `prob`.
template <typename Pred>
RegisterState restrict_and_normalize(const Mat18 &rho, double prob, Pred keep) {
    Mat18 out = Mat18::Zero();
    for (int i = 0; i < kDim; i++) {
        if (!keep(i)) {
            continue;
        }
        for (int j = 0; j < kDim; j++) {
            if (keep(j)) {
                out(i, j) = rho(i, j) / prob;
            }
        }
    }
    return RegisterState::trusted((out + out.adjoint()) * 0.5);
}

}  // namespace

double ancilla_one_probability(const RegisterState &state) {
    double p1 = 0.0;
    for (int i = 1; i < kDim; i += kCaLevels) {
        p1 += state.rho()(i, i).real();
    }
    return p1;
}

AncillaMeasurement measure_ancilla(const RegisterState &state, int round_index, const NoiseParams &params, Rng &rng) {
    double p1 = std::clamp(ancilla_one_probability(state), 0.0, 1.0);
    double p0 = 1.0 - p1;
    if (p1 <= kMinProbability && p0 <= kMinProbability) {
        throw std::domain_error("ancilla measurement on a degenerate state");
    }
    MeasurementOutcome out;
    out.round_index = round_index;
    out.true_bit = rng.uniform() < p1 ? 1 : 0;
    double prob = out.true_bit ? p1 : p0;
    RegisterState post =
        restrict_and_normalize(state.rho(), prob, [&](int i) { return i % kCaLevels == out.true_bit; });

    out.bit = out.true_bit;
    if (params.use_photon_counts) {
        auto pc = photon_count_classify(out.true_bit == 0, params, rng);
        out.counts = pc.counts;
        out.bit = pc.bit;
    }
    if (rng.bernoulli(readout_bias(round_index, params))) {
        out.bit ^= 1;
    }
    return {out, post};
}

RegisterState reset_ancilla(const RegisterState &state) {
    const Mat18 &rho = state.rho();
    Mat18 out = Mat18::Zero();
    for (int i = 0; i < kDim; i += kCaLevels) {
        for (int j = 0; j < kDim; j += kCaLevels) {
            out(i, j) = rho(i, j) + rho(i + 1, j + 1);
        }
    }
    return RegisterState::trusted(out);
}

PhotonClassification photon_count_classify(bool true_bright, const NoiseParams &params, Rng &rng) {
    double mean = true_bright ? params.photon_mean_bright : params.photon_mean_dark;
    int counts = 0;
    if (mean > 0.0) {
        std::poisson_distribution<int> dist(mean);
        counts = dist(rng);
    }
    return {counts, counts <= params.photon_threshold ? 1 : 0};
}

BeDetection detect_be_direct(const RegisterState &state, const NoiseParams &params, Rng &rng) {
    const Mat18 &rho = state.rho();
    std::array<double, 9> probs{};
    for (int i = 0; i < kDim; i++) {
        auto d = basis_digits(i);
        probs[d[0] * 3 + d[1]] += rho(i, i).real();
    }
    double u = rng.uniform();
    int config = 8;
    double acc = 0.0;
    for (int k = 0; k < 9; k++) {
        acc += probs[k];
        if (u < acc) {
            config = k;
            break;
        }
    }
    while (probs[config] <= kMinProbability && config > 0) {
        config--;
    }
    std::array<int, 2> levels{config / 3, config % 3};
    RegisterState post = restrict_and_normalize(rho, probs[config], [&](int i) {
        auto d = basis_digits(i);
        return d[0] == levels[0] && d[1] == levels[1];
    });

    std::array<int, 2> bits{};
    for (int ion = 0; ion < 2; ion++) {
        if (levels[ion] == 2) {
            bits[ion] = params.leaked_reads_dark ? 1 : 0;
            continue;
        }
        bits[ion] = levels[ion];
        if (rng.bernoulli(params.det_error_be)) {
            bits[ion] ^= 1;
        }
    }
    return {bits, levels, post};
}

}  // namespace qndsim
