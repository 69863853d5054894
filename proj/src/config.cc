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

#include "qndsim/config.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace qndsim {

using nlohmann::json;

namespace {

std::string join_lines(const std::vector<std::string> &lines) {
    std::string out;
    for (const auto &l : lines) {
        out += out.empty() ? "" : "\n";
        out += l;
    }
    return out;
}

// Reads typed fields from one JSON object and records every problem instead of stopping.
class FieldReader {
   public:
    FieldReader(const json &obj, std::string prefix, std::vector<std::string> &diag,
                std::set<std::string> allowed)
        : obj_(obj), prefix_(std::move(prefix)), diag_(diag) {
        if (!obj_.is_object()) {
            error(prefix_.empty() ? "config" : prefix_.substr(0, prefix_.size() - 1), "must be a JSON object");
            return;
        }
        for (const auto &item : obj_.items()) {
            if (!allowed.count(item.key())) {
                diag_.push_back("unknown field `" + prefix_ + item.key() + "`");
            }
        }
    }

    bool has(const std::string &key) const {
        return obj_.is_object() && obj_.contains(key);
    }
    const json &raw(const std::string &key) const {
        return obj_.at(key);
    }
    std::string name(const std::string &key) const {
        return prefix_ + key;
    }

    void error(const std::string &field, const std::string &reason) {
        diag_.push_back("`" + field + "` " + reason);
    }

    void number(const std::string &key, double &out) {
        if (!has(key)) {
            return;
        }
        const json &v = raw(key);
        if (!v.is_number()) {
            error(name(key), "must be a number");
            return;
        }
        out = v.get<double>();
    }

    void integer(const std::string &key, int &out, int min_value) {
        if (!has(key)) {
            return;
        }
        const json &v = raw(key);
        if (!v.is_number_integer()) {
            error(name(key), "must be an integer");
            return;
        }
        auto x = v.get<int64_t>();
        if (x < min_value || x > INT32_MAX) {
            error(name(key), "= " + std::to_string(x) + " must be >= " + std::to_string(min_value));
            return;
        }
        out = int(x);
    }

    void boolean(const std::string &key, bool &out) {
        if (!has(key)) {
            return;
        }
        if (!raw(key).is_boolean()) {
            error(name(key), "must be true or false");
            return;
        }
        out = raw(key).get<bool>();
    }

    bool string(const std::string &key, std::string &out) {
        if (!has(key)) {
            return false;
        }
        if (!raw(key).is_string()) {
            error(name(key), "must be a string");
            return false;
        }
        out = raw(key).get<std::string>();
        return true;
    }

    void probability(const std::string &key, double &out) {
        number(key, out);
        if (has(key) && raw(key).is_number() && !(out >= 0.0 && out <= 1.0)) {
            error(name(key), "= " + raw(key).dump() + " is outside [0, 1]");
        }
    }

   private:
    const json &obj_;
    std::string prefix_;
    std::vector<std::string> &diag_;
};

void read_noise(const json &obj, NoiseParams &noise, std::vector<std::string> &diag) {
    FieldReader r(obj, "noise.", diag,
                  {"gamma_dep", "gamma_leak", "readout_drift", "readout_bias0", "det_error_be",
                   "photon_mean_bright", "photon_mean_dark", "photon_threshold", "use_photon_counts",
                   "depolarize_support", "leaked_reads_dark"});
    size_t before = diag.size();
    r.number("gamma_dep", noise.gamma_dep);
    r.number("gamma_leak", noise.gamma_leak);
    r.number("readout_drift", noise.readout_drift);
    r.number("readout_bias0", noise.readout_bias0);
    r.number("det_error_be", noise.det_error_be);
    r.number("photon_mean_bright", noise.photon_mean_bright);
    r.number("photon_mean_dark", noise.photon_mean_dark);
    r.integer("photon_threshold", noise.photon_threshold, 0);
    r.boolean("use_photon_counts", noise.use_photon_counts);
    r.boolean("leaked_reads_dark", noise.leaked_reads_dark);
    std::string support;
    if (r.string("depolarize_support", support)) {
        if (support == "register") {
            noise.depolarize_support = DepolarizeSupport::Register;
        } else if (support == "be_pair") {
            noise.depolarize_support = DepolarizeSupport::BePair;
        } else {
            r.error("noise.depolarize_support", "must be \"register\" or \"be_pair\", got \"" + support + "\"");
        }
    }
    if (diag.size() == before) {
        for (auto &v : noise.violations()) {
            diag.push_back(std::move(v));
        }
    }
}

void read_stark(const json &obj, StarkShifts &stark, std::vector<std::string> &diag) {
    FieldReader r(obj, "protocol.stark.", diag, {"readout_z", "readout_x", "correction_z", "correction_x", "compensate"});
    r.number("readout_z", stark.readout_z);
    r.number("readout_x", stark.readout_x);
    r.number("correction_z", stark.correction_z);
    r.number("correction_x", stark.correction_x);
    r.boolean("compensate", stark.compensate);
}

template <typename T>
void read_list(FieldReader &r, const std::string &key, std::vector<T> &out) {
    if (!r.has(key)) {
        return;
    }
    const json &v = r.raw(key);
    if (!v.is_array()) {
        r.error(r.name(key), "must be an array");
        return;
    }
    out.clear();
    for (const auto &x : v) {
        bool ok = std::is_integral_v<T> ? x.is_number_integer() : x.is_number();
        if (!ok) {
            r.error(r.name(key), std::is_integral_v<T> ? "must contain only integers" : "must contain only numbers");
            return;
        }
        out.push_back(x.get<T>());
    }
}

void read_eigenvalue_target(FieldReader &r, int &target) {
    const json &v = r.raw("target");
    if (!v.is_number_integer() || (v.get<int64_t>() != 1 && v.get<int64_t>() != -1)) {
        r.error("protocol.target", "must be +1 or -1 for a subspace stabilization, got " + v.dump());
        return;
    }
    target = int(v.get<int64_t>());
}

void read_bell_target(FieldReader &r, BellLabel &label) {
    const json &v = r.raw("target");
    try {
        if (!v.is_string()) {
            throw std::invalid_argument("");
        }
        label = parse_bell_label(v.get<std::string>());
    } catch (const std::invalid_argument &) {
        r.error("protocol.target", "must be one of \"Phi+\", \"Phi-\", \"Psi+\", \"Psi-\" for a Bell stabilization, got " +
                                       v.dump());
    }
}

void read_protocol(const json &obj, ExperimentConfig &cfg, std::vector<std::string> &diag) {
    FieldReader r(obj, "protocol.", diag,
                  {"basis", "feedback", "target", "rounds", "cycles", "theta_grid", "sample_points", "input",
                   "correction_fidelity", "kick_strength", "phi_b", "source", "skip_leading", "stark"});
    const std::string kind = to_string(cfg.experiment);

    std::string text;
    if (r.string("basis", text)) {
        try {
            cfg.basis = parse_basis(text);
        } catch (const std::invalid_argument &) {
            r.error("protocol.basis", "must be \"Z\" or \"X\", got \"" + text + "\"");
        }
    }
    r.boolean("feedback", cfg.feedback);
    r.integer("rounds", cfg.rounds, 1);
    r.integer("cycles", cfg.cycles, 1);
    r.integer("skip_leading", cfg.skip_leading, 0);
    r.probability("correction_fidelity", cfg.correction_fidelity);
    r.probability("kick_strength", cfg.kick_strength);
    r.number("phi_b", cfg.settings.phi_b);
    read_list(r, "theta_grid", cfg.theta_grid);
    bool explicit_samples = r.has("sample_points");
    read_list(r, "sample_points", cfg.sample_points);
    if (r.has("stark")) {
        read_stark(r.raw("stark"), cfg.settings.stark, diag);
    }

    if (r.string("source", text)) {
        if (text == "bell") {
            cfg.correlation_source = CorrelationSource::Bell;
        } else if (text == "subspace") {
            cfg.correlation_source = CorrelationSource::Subspace;
        } else {
            r.error("protocol.source", "must be \"bell\" or \"subspace\", got \"" + text + "\"");
        }
    }

    bool bell_like = cfg.experiment == ExperimentKind::StabilizeBell ||
                     (cfg.experiment == ExperimentKind::Correlations && cfg.correlation_source == CorrelationSource::Bell);
    bool subspace_like = cfg.experiment == ExperimentKind::StabilizeSubspace ||
                         (cfg.experiment == ExperimentKind::Correlations &&
                          cfg.correlation_source == CorrelationSource::Subspace);

    if (r.string("input", text)) {
        if (bell_like && text == "ground") {
            cfg.bell_input = BellInput::Ground;
        } else if (bell_like && text == "maximally_mixed") {
            cfg.bell_input = BellInput::MaximallyMixed;
        } else if (subspace_like && text == "rotated") {
            cfg.feedback_input = FeedbackInput::Rotated;
        } else if (subspace_like && text == "eigenstate") {
            cfg.feedback_input = FeedbackInput::Eigenstate;
        } else {
            r.error("protocol.input", "\"" + text + "\" is not a valid input for " + kind);
        }
    }

    if (bell_like || subspace_like) {
        if (!r.has("target")) {
            diag.push_back("missing `target` for " + kind + ": " +
                           (bell_like ? "a Bell label (\"Phi+\", \"Phi-\", \"Psi+\", \"Psi-\") is required"
                                      : "an eigenvalue (+1 or -1) is required"));
        } else if (bell_like) {
            read_bell_target(r, cfg.bell_target);
        } else {
            read_eigenvalue_target(r, cfg.target);
        }
    }
    if (cfg.experiment == ExperimentKind::SingleRound && cfg.theta_grid.empty()) {
        diag.push_back("missing `theta_grid` for single_round: at least one angle is required");
    }
    for (double t : cfg.theta_grid) {
        if (!std::isfinite(t)) {
            r.error("protocol.theta_grid", "must contain finite angles");
            break;
        }
    }
    if (cfg.experiment == ExperimentKind::Correlations && cfg.correlation_source == CorrelationSource::Subspace) {
        if (r.has("feedback") && !cfg.feedback) {
            r.error("protocol.feedback", "must be true for correlations");
        }
        cfg.feedback = true;
    }
    if (bell_like) {
        if (!explicit_samples) {
            cfg.sample_points = {1, cfg.cycles};
            if (cfg.cycles == 1) {
                cfg.sample_points = {1};
            }
        }
        for (int c : cfg.sample_points) {
            if (c < 1 || c > cfg.cycles) {
                r.error("protocol.sample_points", "entry " + std::to_string(c) + " is outside [1, cycles = " +
                                                      std::to_string(cfg.cycles) + "]");
            }
        }
    }
}

std::vector<std::string> parse_into(const std::string &text, ExperimentConfig &cfg) {
    std::vector<std::string> diag;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        return {std::string("config is not valid JSON: ") + e.what()};
    }
    FieldReader top(doc, "", diag, {"experiment", "seed", "workers", "output_dir", "shots", "noise", "protocol"});
    if (!doc.is_object()) {
        return diag;
    }

    std::string kind;
    bool kind_ok = false;
    if (!top.has("experiment")) {
        diag.push_back("missing `experiment`: one of single_round, stabilize_subspace, stabilize_bell, correlations");
    } else if (top.string("experiment", kind)) {
        kind_ok = true;
        if (kind == "single_round") {
            cfg.experiment = ExperimentKind::SingleRound;
        } else if (kind == "stabilize_subspace") {
            cfg.experiment = ExperimentKind::StabilizeSubspace;
        } else if (kind == "stabilize_bell") {
            cfg.experiment = ExperimentKind::StabilizeBell;
        } else if (kind == "correlations") {
            cfg.experiment = ExperimentKind::Correlations;
        } else {
            kind_ok = false;
            top.error("experiment", "\"" + kind +
                                        "\" is not one of single_round, stabilize_subspace, stabilize_bell, correlations");
        }
    }

    if (!top.has("seed")) {
        diag.push_back("missing `seed`: a non-negative 64-bit integer is required");
    } else if (doc["seed"].is_number_unsigned()) {
        cfg.seed = doc["seed"].get<uint64_t>();
    } else {
        top.error("seed", "must be a non-negative 64-bit integer");
    }
    top.integer("workers", cfg.workers, 0);
    top.integer("shots", cfg.shots, 1);
    top.string("output_dir", cfg.output_dir);
    if (top.has("noise")) {
        read_noise(doc["noise"], cfg.settings.noise, diag);
    }
    if (kind_ok) {
        read_protocol(top.has("protocol") ? doc["protocol"] : json::object(), cfg, diag);
    }
    cfg.settings.workers = cfg.workers;
    return diag;
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError({"cannot read config file '" + path + "'"});
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::SingleRound:
            return "single_round";
        case ExperimentKind::StabilizeSubspace:
            return "stabilize_subspace";
        case ExperimentKind::StabilizeBell:
            return "stabilize_bell";
        case ExperimentKind::Correlations:
            return "correlations";
    }
    throw std::invalid_argument("unknown experiment kind");
}

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {
}

StabilizationRun ExperimentConfig::stabilization_run() const {
    StabilizationRun run;
    run.basis = basis;
    run.feedback = feedback;
    run.target = target;
    run.rounds = rounds;
    run.shots = shots;
    run.feedback_input = feedback_input;
    run.correction_fidelity = correction_fidelity;
    run.kick_strength = kick_strength;
    return run;
}

BellRun ExperimentConfig::bell_run() const {
    BellRun run;
    run.target = bell_target;
    run.cycles = cycles;
    run.shots = shots;
    run.input = bell_input;
    run.sample_points = sample_points;
    run.correction_fidelity = correction_fidelity;
    run.kick_strength = kick_strength;
    return run;
}

std::vector<std::string> validate_config_text(const std::string &text) {
    ExperimentConfig cfg;
    return parse_into(text, cfg);
}

std::vector<std::string> validate_config(const std::string &path) {
    return validate_config_text(read_file(path));
}

ExperimentConfig parse_config_text(const std::string &text) {
    ExperimentConfig cfg;
    auto diag = parse_into(text, cfg);
    if (!diag.empty()) {
        throw ConfigError(std::move(diag));
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    return parse_config_text(read_file(path));
}

}  // namespace qndsim
