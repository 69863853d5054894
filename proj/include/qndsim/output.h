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

#ifndef QNDSIM_OUTPUT_H
#define QNDSIM_OUTPUT_H

#include <string>
#include <utility>
#include <vector>

#include "qndsim/config.h"

namespace qndsim {

inline constexpr const char *kCsvSchemaVersion = "1";

/// Column orders of every CSV the CLI writes.
inline const std::vector<std::string> kSeriesColumns{"round",  "basis",     "shots",    "ones",         "p_one",
                                                     "p_zero", "on_target", "p_target", "stderr_target"};
inline const std::vector<std::string> kCharacterizationColumns{
    "theta",      "shots",      "p_in_plus", "p_in_minus", "p_m_one",        "p_m_zero",         "plus_one",
    "minus_zero", "plus_zero",  "minus_one", "p_out_one_plus", "p_out_zero_minus", "f_nd", "f_qsp"};
inline const std::vector<std::string> kFidelityColumns{"cycle", "shots",           "zz",
                                                       "xx",    "yy",              "fidelity",
                                                       "stderr_fidelity", "exact_fidelity"};
inline const std::vector<std::string> kCorrelationColumns{"basis", "category", "pairs", "equal", "correlation",
                                                          "stderr_correlation"};
inline const std::vector<std::string> kFeedbackStatsColumns{
    "decision",          "after_feedback",      "feedback_twice", "p_again",           "stderr_again",
    "after_no_feedback", "feedback_after_none", "p_after_none",   "stderr_after_none", "sparse"};

/// File name and full contents, in write order.
struct RunArtifacts {
    std::vector<std::pair<std::string, std::string>> files;
    const std::string &get(const std::string &name) const;
};

/// Runs the configured experiment and renders every output in memory. The bytes depend
/// only on the config and seed, never on the worker count.
RunArtifacts run_experiment(const ExperimentConfig &config);

/// Creates `dir` if needed and writes the artifacts. Throws std::runtime_error on I/O failure.
void write_artifacts(const RunArtifacts &artifacts, const std::string &dir);

/// "%.12g", with "nan" for undefined values.
std::string format_double(double v);

std::string series_csv(const RoundSeries &series);
std::string characterization_csv(const CharacterizationTable &table);
std::string fidelity_csv(const std::vector<FidelitySample> &samples);
std::string correlation_csv(const std::vector<CorrelationTable> &tables);
std::string feedback_stats_csv(const ConditionalFeedbackStats &stats);

}  // namespace qndsim

#endif
