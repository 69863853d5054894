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

#include "qndsim/output.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qndsim {

using ordered_json = nlohmann::ordered_json;

namespace {

class CsvWriter {
   public:
    explicit CsvWriter(const std::vector<std::string> &columns) {
        row(columns);
    }
    void row(const std::vector<std::string> &cells) {
        for (size_t i = 0; i < cells.size(); i++) {
            out_ += i ? "," : "";
            out_ += cells[i];
        }
        out_ += '\n';
    }
    std::string str() const {
        return out_;
    }

   private:
    std::string out_;
};

std::string fmt(double v) {
    return format_double(v);
}
std::string fmt(int v) {
    return std::to_string(v);
}

ordered_json fit_json(const DecayFit &fit, const char *model) {
    return {{"model", model},
            {"rate", fit.rate},
            {"rate_stderr", fit.rate_stderr},
            {"amplitude", fit.amplitude},
            {"slope", fit.slope},
            {"converged", fit.converged},
            {"message", fit.message}};
}

ordered_json fit_or_error(const RoundSeries &series, bool closed_loop) {
    try {
        return closed_loop ? fit_json(fit_closed_loop(series), "linear, rounds 2..N, rate = |slope| / (p(2) - 0.5)")
                           : fit_json(fit_open_loop(series), "0.5 + A exp(-rate n)");
    } catch (const std::exception &e) {
        return {{"error", e.what()}};
    }
}

ordered_json config_echo(const ExperimentConfig &c) {
    const NoiseParams &n = c.settings.noise;
    const StarkShifts &s = c.settings.stark;
    ordered_json noise{{"gamma_dep", n.gamma_dep},
                       {"gamma_leak", n.gamma_leak},
                       {"readout_drift", n.readout_drift},
                       {"readout_bias0", n.readout_bias0},
                       {"det_error_be", n.det_error_be},
                       {"photon_mean_bright", n.photon_mean_bright},
                       {"photon_mean_dark", n.photon_mean_dark},
                       {"photon_threshold", n.photon_threshold},
                       {"use_photon_counts", n.use_photon_counts},
                       {"depolarize_support",
                        n.depolarize_support == DepolarizeSupport::Register ? "register" : "be_pair"},
                       {"leaked_reads_dark", n.leaked_reads_dark}};
    ordered_json protocol{{"phi_b", c.settings.phi_b},
                          {"correction_fidelity", c.correction_fidelity},
                          {"kick_strength", c.kick_strength},
                          {"stark",
                           {{"readout_z", s.readout_z},
                            {"readout_x", s.readout_x},
                            {"correction_z", s.correction_z},
                            {"correction_x", s.correction_x},
                            {"compensate", s.compensate}}}};
    bool bell = c.experiment == ExperimentKind::StabilizeBell ||
                (c.experiment == ExperimentKind::Correlations && c.correlation_source == CorrelationSource::Bell);
    switch (c.experiment) {
        case ExperimentKind::SingleRound:
            protocol["theta_grid"] = c.theta_grid;
            break;
        case ExperimentKind::Correlations:
            protocol["source"] = bell ? "bell" : "subspace";
            protocol["skip_leading"] = c.skip_leading;
            [[fallthrough]];
        case ExperimentKind::StabilizeSubspace:
        case ExperimentKind::StabilizeBell:
            if (bell) {
                protocol["target"] = to_string(c.bell_target);
                protocol["cycles"] = c.cycles;
                protocol["input"] = c.bell_input == BellInput::Ground ? "ground" : "maximally_mixed";
                if (c.experiment == ExperimentKind::StabilizeBell) {
                    protocol["sample_points"] = c.sample_points;
                }
            } else {
                protocol["basis"] = to_string(c.basis);
                protocol["feedback"] = c.feedback;
                protocol["target"] = c.target;
                protocol["rounds"] = c.rounds;
                protocol["input"] = c.feedback ? (c.feedback_input == FeedbackInput::Rotated ? "rotated" : "eigenstate")
                                               : "eigenstate";
            }
            break;
    }
    return {{"experiment", to_string(c.experiment)},
            {"seed", c.seed},
            {"shots", c.shots},
            {"noise", noise},
            {"protocol", protocol}};
}

RoundSeries single_round_series(const CharacterizationTable &table) {
    // One row: the ancilla over all inputs, on target when it agrees with the later Be parity.
    RoundSeries s;
    RoundSeries::Row row{1, StabilizerBasis::Z, 0, 0, 0};
    for (const auto &r : table.rows) {
        row.shots += r.shots;
        row.ones += r.m_one;
        row.on_target += r.plus_one + r.minus_zero;
    }
    s.rows.push_back(row);
    return s;
}

}  // namespace

const std::string &RunArtifacts::get(const std::string &name) const {
    for (const auto &f : files) {
        if (f.first == name) {
            return f.second;
        }
    }
    throw std::out_of_range("no artifact named '" + name + "'");
}

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string series_csv(const RoundSeries &series) {
    CsvWriter w(kSeriesColumns);
    for (const auto &r : series.rows) {
        w.row({fmt(r.round), to_string(r.basis), fmt(r.shots), fmt(r.ones), fmt(r.p_one()), fmt(r.p_zero()),
               fmt(r.on_target), fmt(r.p_target()), fmt(r.stderr_target())});
    }
    return w.str();
}

std::string characterization_csv(const CharacterizationTable &table) {
    CsvWriter w(kCharacterizationColumns);
    for (const auto &r : table.rows) {
        auto in = r.p_in();
        auto m = r.p_m();
        auto out = r.p_out();
        w.row({fmt(r.theta), fmt(r.shots), fmt(in.plus), fmt(in.minus), fmt(m.plus), fmt(m.minus), fmt(r.plus_one),
               fmt(r.minus_zero), fmt(r.plus_zero), fmt(r.minus_one), fmt(out.plus), fmt(out.minus), fmt(r.f_nd()),
               fmt(r.f_qsp())});
    }
    return w.str();
}

std::string fidelity_csv(const std::vector<FidelitySample> &samples) {
    CsvWriter w(kFidelityColumns);
    for (const auto &s : samples) {
        w.row({fmt(s.cycle), fmt(s.shots), fmt(s.zz), fmt(s.xx), fmt(s.yy), fmt(s.fidelity), fmt(s.stderr_fidelity),
               fmt(s.exact_fidelity)});
    }
    return w.str();
}

std::string correlation_csv(const std::vector<CorrelationTable> &tables) {
    CsvWriter w(kCorrelationColumns);
    for (const auto &t : tables) {
        for (const auto &r : t.rows) {
            w.row({to_string(t.basis), to_string(r.category), fmt(r.pairs), fmt(r.equal), fmt(r.correlation()),
                   fmt(r.stderr_correlation())});
        }
    }
    return w.str();
}

std::string feedback_stats_csv(const ConditionalFeedbackStats &stats) {
    CsvWriter w(kFeedbackStatsColumns);
    auto emit = [&](const std::string &label, const ConditionalFeedbackRow &r) {
        w.row({label, fmt(r.after_feedback), fmt(r.feedback_twice), fmt(r.p_again()), fmt(r.stderr_again()),
               fmt(r.after_no_feedback), fmt(r.feedback_after_none), fmt(r.p_after_none()), fmt(r.stderr_after_none()),
               r.sparse() ? "1" : "0"});
    };
    for (const auto &r : stats.rows) {
        emit(std::to_string(r.decision), r);
    }
    emit("pooled", stats.pooled);
    return w.str();
}

RunArtifacts run_experiment(const ExperimentConfig &c) {
    RunArtifacts out;
    ordered_json files = ordered_json::object();
    ordered_json results = ordered_json::object();
    ordered_json warnings = ordered_json::array();
    auto add = [&](const std::string &name, std::string body, const std::vector<std::string> &columns) {
        out.files.emplace_back(name, std::move(body));
        files[name] = columns;
    };

    switch (c.experiment) {
        case ExperimentKind::SingleRound: {
            auto table = run_single_round(c.theta_grid, c.shots, c.settings, c.seed);
            add("series.csv", series_csv(single_round_series(table)), kSeriesColumns);
            add("characterization.csv", characterization_csv(table), kCharacterizationColumns);
            results["mean_f_nd"] = table.mean_f_nd();
            results["mean_f_qsp"] = table.mean_f_qsp();
            break;
        }
        case ExperimentKind::StabilizeSubspace: {
            auto r = run_stabilization(c.stabilization_run(), c.settings, c.seed);
            add("series.csv", series_csv(r.series), kSeriesColumns);
            results["fit"] = fit_or_error(r.series, c.feedback);
            break;
        }
        case ExperimentKind::StabilizeBell: {
            auto r = run_bell_stabilization(c.bell_run(), c.settings, c.seed);
            add("series.csv", series_csv(r.series), kSeriesColumns);
            add("fidelity.csv", fidelity_csv(r.fidelities), kFidelityColumns);
            ordered_json f = ordered_json::array();
            for (const auto &s : r.fidelities) {
                f.push_back({{"cycle", s.cycle}, {"fidelity", s.fidelity}, {"exact_fidelity", s.exact_fidelity}});
            }
            results["fidelities"] = f;
            break;
        }
        case ExperimentKind::Correlations: {
            std::vector<TrajectoryRecord> records;
            std::vector<CorrelationTable> tables;
            if (c.correlation_source == CorrelationSource::Bell) {
                BellRun run = c.bell_run();
                run.sample_points.clear();
                auto r = run_bell_stabilization(run, c.settings, c.seed);
                add("series.csv", series_csv(r.series), kSeriesColumns);
                records = std::move(r.records);
                tables.push_back(correlation_analysis(records, StabilizerBasis::Z, c.skip_leading));
                tables.push_back(correlation_analysis(records, StabilizerBasis::X, c.skip_leading));
            } else {
                auto r = run_stabilization(c.stabilization_run(), c.settings, c.seed);
                add("series.csv", series_csv(r.series), kSeriesColumns);
                records = std::move(r.records);
                tables.push_back(correlation_analysis(records, c.basis, c.skip_leading));
            }
            auto stats = conditional_feedback_stats(records);
            add("correlations.csv", correlation_csv(tables), kCorrelationColumns);
            add("feedback_stats.csv", feedback_stats_csv(stats), kFeedbackStatsColumns);
            for (const auto &w : stats.warnings) {
                warnings.push_back(w);
            }
            break;
        }
    }

    ordered_json manifest{{"csv_schema_version", kCsvSchemaVersion},
                          {"seed_derivation", "trajectory k of stream s uses splitmix64 over (seed, s, k, ...)"},
                          {"config", config_echo(c)},
                          {"files", files},
                          {"results", results},
                          {"warnings", warnings}};
    out.files.emplace_back("manifest.json", manifest.dump(2) + "\n");
    return out;
}

void write_artifacts(const RunArtifacts &artifacts, const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
    }
    for (const auto &[name, body] : artifacts.files) {
        auto path = std::filesystem::path(dir) / name;
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        f << body;
        if (!f) {
            throw std::runtime_error("write failed for '" + path.string() + "'");
        }
    }
}

}  // namespace qndsim
