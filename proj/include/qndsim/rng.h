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

#ifndef QNDSIM_RNG_H
#define QNDSIM_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace qndsim {

/// SplitMix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based seed derivation: the seed of stream (master, k1, k2, ...) does not
/// depend on how many other streams were drawn, so workers can run in any order.
constexpr uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> counters) {
    uint64_t h = mix64(master);
    for (uint64_t c : counters) {
        h = mix64(h ^ mix64(c + 0x632BE59BD9B4E019ull));
    }
    return h;
}

/// Per-trajectory random source. Never shared between trajectories.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed) : seed_(seed), engine_(seed) {
    }

    static constexpr result_type min() {
        return std::mt19937_64::min();
    }
    static constexpr result_type max() {
        return std::mt19937_64::max();
    }
    result_type operator()() {
        return engine_();
    }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() {
        return double(engine_() >> 11) * 0x1.0p-53;
    }
    bool bernoulli(double p) {
        return uniform() < p;
    }
    uint64_t seed() const {
        return seed_;
    }

   private:
    uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace qndsim

#endif
