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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qndsim/experiments.h"

namespace qndsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double conditional(int hits, int given) {
    return given > 0 ? double(hits) / given : kNaN;
}

double conditional_stderr(int hits, int given) {
    return given > 0 ? binomial_stderr(double(hits) / given, given) : kNaN;
}

CorrectionCategory categorize(bool cx, bool cz) {
    if (cx && cz) {
        return CorrectionCategory::Both;
    }
    if (cx) {
        return CorrectionCategory::CxOnly;
    }
    if (cz) {
        return CorrectionCategory::CzOnly;
    }
    return CorrectionCategory::None;
}

}  // namespace

std::string to_string(CorrectionCategory category) {
    switch (category) {
        case CorrectionCategory::None:
            return "none";
        case CorrectionCategory::CxOnly:
            return "cx_only";
        case CorrectionCategory::CzOnly:
            return "cz_only";
        case CorrectionCategory::Both:
            return "both";
    }
    throw std::invalid_argument("unknown correction category");
}

double CorrelationRow::correlation() const {
    return pairs > 0 ? double(equal) / pairs : kNaN;
}

double CorrelationRow::stderr_correlation() const {
    return conditional_stderr(equal, pairs);
}

CorrelationTable correlation_analysis(const std::vector<TrajectoryRecord> &records, StabilizerBasis basis,
                                      int skip_leading) {
    if (skip_leading < 0) {
        throw std::invalid_argument("skip_leading must be >= 0");
    }
    CorrelationTable table;
    table.basis = basis;
    for (size_t c = 0; c < 4; c++) {
        table.rows[c] = {CorrectionCategory(c), 0, 0};
    }
    for (const auto &rec : records) {
        int previous = -1;
        int pair_index = 0;
        for (size_t i = 0; i < rec.rounds.size(); i++) {
            if (rec.rounds[i].basis != basis) {
                continue;
            }
            if (previous >= 0 && pair_index++ >= skip_leading) {
                bool cx = false;
                bool cz = false;
                for (size_t j = previous; j < i; j++) {
                    for (CorrectionKind k : rec.rounds[j].corrections) {
                        (k == CorrectionKind::CX ? cx : cz) = true;
                    }
                }
                auto &row = table.rows[size_t(categorize(cx, cz))];
                row.pairs++;
                row.equal += rec.rounds[previous].outcome.bit == rec.rounds[i].outcome.bit ? 1 : 0;
            }
            previous = int(i);
        }
    }
    return table;
}

double ConditionalFeedbackRow::p_again() const {
    return conditional(feedback_twice, after_feedback);
}
double ConditionalFeedbackRow::p_after_none() const {
    return conditional(feedback_after_none, after_no_feedback);
}
double ConditionalFeedbackRow::stderr_again() const {
    return conditional_stderr(feedback_twice, after_feedback);
}
double ConditionalFeedbackRow::stderr_after_none() const {
    return conditional_stderr(feedback_after_none, after_no_feedback);
}
bool ConditionalFeedbackRow::sparse() const {
    return after_feedback < kSparseEventThreshold || after_no_feedback < kSparseEventThreshold;
}

ConditionalFeedbackStats conditional_feedback_stats(const std::vector<TrajectoryRecord> &records) {
    ConditionalFeedbackStats stats;
    stats.pooled = {0, 0, 0, 0, 0};
    for (const auto &rec : records) {
        std::vector<bool> fed;
        for (const auto &e : rec.rounds) {
            if (e.decision) {
                fed.push_back(!e.corrections.empty());
            }
        }
        for (size_t i = 0; i + 1 < fed.size(); i++) {
            if (stats.rows.size() <= i) {
                stats.rows.push_back({int(i) + 1, 0, 0, 0, 0});
            }
            auto &row = stats.rows[i];
            if (fed[i]) {
                row.after_feedback++;
                row.feedback_twice += fed[i + 1];
            } else {
                row.after_no_feedback++;
                row.feedback_after_none += fed[i + 1];
            }
        }
    }
    for (const auto &row : stats.rows) {
        stats.pooled.after_feedback += row.after_feedback;
        stats.pooled.feedback_twice += row.feedback_twice;
        stats.pooled.after_no_feedback += row.after_no_feedback;
        stats.pooled.feedback_after_none += row.feedback_after_none;
        if (row.sparse()) {
            stats.warnings.push_back("decision " + std::to_string(row.decision) + ": sparse conditioning (" +
                                     std::to_string(row.after_feedback) + " after feedback, " +
                                     std::to_string(row.after_no_feedback) + " after none)");
        }
    }
    if (stats.pooled.after_feedback == 0) {
        stats.warnings.push_back("no feedback events: P(0_{i+1}|0_i) is undefined");
    }
    return stats;
}

}  // namespace qndsim
