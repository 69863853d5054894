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

#ifndef QNDSIM_CONFIG_H
#define QNDSIM_CONFIG_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qndsim/experiments.h"

namespace qndsim {

enum class ExperimentKind : uint8_t { SingleRound, StabilizeSubspace, StabilizeBell, Correlations };

std::string to_string(ExperimentKind kind);

/// Which stabilization produces the records for a correlations run.
enum class CorrelationSource : uint8_t { Bell, Subspace };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::StabilizeSubspace;
    uint64_t seed = 0;
    int workers = 1;
    std::string output_dir = "out";
    int shots = 2000;

    SimulationSettings settings;

    StabilizerBasis basis = StabilizerBasis::Z;
    bool feedback = false;
    /// Eigenvalue target for subspace runs.
    int target = 1;
    /// Target for Bell runs.
    BellLabel bell_target = BellLabel::PhiPlus;
    int rounds = 50;
    int cycles = 25;
    std::vector<double> theta_grid;
    std::vector<int> sample_points{1, 25};
    FeedbackInput feedback_input = FeedbackInput::Rotated;
    BellInput bell_input = BellInput::Ground;
    double correction_fidelity = 1.0;
    double kick_strength = 1.0;
    CorrelationSource correlation_source = CorrelationSource::Bell;
    int skip_leading = 1;

    StabilizationRun stabilization_run() const;
    BellRun bell_run() const;
};

/// Thrown for unreadable or invalid configs; carries every diagnostic found.
class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(std::vector<std::string> diagnostics);
    const std::vector<std::string> &diagnostics() const {
        return diagnostics_;
    }

   private:
    std::vector<std::string> diagnostics_;
};

/// Every violation in the JSON text. Empty means the config is valid.
std::vector<std::string> validate_config_text(const std::string &text);

/// Reads the file and returns its diagnostics. Throws ConfigError when unreadable.
std::vector<std::string> validate_config(const std::string &path);

/// Throws ConfigError listing every violation.
ExperimentConfig parse_config_text(const std::string &text);
ExperimentConfig load_config(const std::string &path);

}  // namespace qndsim

#endif
