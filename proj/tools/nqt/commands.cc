// Copyright 2026 The nqt Authors
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

#include "commands.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

#include "nqt/errors.h"
#include "nqt/reaction.h"
#include "nqt/teleport.h"

namespace nqt::cli {

namespace {

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_real(double v) {
    if (!std::isfinite(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c;
        if (c == '"') {
            q += '"';
        }
    }
    return q + "\"";
}

std::string csv_cell(const Cell &c) {
    struct {
        std::string operator()(std::monostate) const {
            return "nan";
        }
        std::string operator()(const std::string &s) const {
            return csv_field(s);
        }
        std::string operator()(double v) const {
            return csv_real(v);
        }
        std::string operator()(std::int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
    } visitor;
    return std::visit(visitor, c);
}

nlohmann::ordered_json json_cell(const Cell &c) {
    struct {
        nlohmann::ordered_json operator()(std::monostate) const {
            return nullptr;
        }
        nlohmann::ordered_json operator()(const std::string &s) const {
            return s;
        }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) {
                return nullptr;
            }
            return v == 0 ? 0.0 : v;
        }
        nlohmann::ordered_json operator()(std::int64_t v) const {
            return v;
        }
        nlohmann::ordered_json operator()(bool v) const {
            return v;
        }
    } visitor;
    return std::visit(visitor, c);
}

void emit(const RunConfig &config, const Table &table, std::ostream &out,
          const std::optional<nlohmann::ordered_json> &summary = std::nullopt) {
    KeyValues m = manifest(config);
    if (config.format == OutputFormat::csv) {
        out << "# nqt run manifest\n";
        for (const auto &[k, v] : m) {
            out << "# " << k << " = " << v << "\n";
        }
        for (std::size_t i = 0; i < table.columns.size(); i++) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << "\n";
        for (const auto &row : table.rows) {
            for (std::size_t i = 0; i < row.size(); i++) {
                out << (i ? "," : "") << csv_cell(row[i]);
            }
            out << "\n";
        }
        return;
    }
    nlohmann::ordered_json jm = nlohmann::ordered_json::object();
    for (const auto &[k, v] : m) {
        jm[k] = v;
    }
    out << nlohmann::ordered_json{{"manifest", jm}}.dump() << "\n";
    for (const auto &row : table.rows) {
        nlohmann::ordered_json j = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); i++) {
            j[table.columns[i]] = json_cell(row[i]);
        }
        out << j.dump() << "\n";
    }
    if (summary) {
        out << nlohmann::ordered_json{{"summary", *summary}}.dump() << "\n";
    }
}

void require_physical(const BlochVector &b, const char *what) {
    if (!b.is_physical()) {
        throw InvariantViolation(std::string(what) + " Bloch vector exceeds unit length");
    }
}

void require_probability(double p, const char *what) {
    if (!(p >= -kComposedTol && p <= 1 + kComposedTol)) {
        throw InvariantViolation(std::string(what) + " outside [0,1]");
    }
}

BlochVector bloch_of(const Ket &k) {
    return bloch_from(density_from(k));
}

void push_bloch(std::vector<Cell> &row, const BlochVector &b) {
    row.emplace_back(b.px);
    row.emplace_back(b.py);
    row.emplace_back(b.pz);
}

void push_vec(std::vector<Cell> &row, const Vec3 &v) {
    row.emplace_back(v.x);
    row.emplace_back(v.y);
    row.emplace_back(v.z);
}

}  // namespace

void cmd_teleport(const RunConfig &config, std::ostream &out) {
    auto policy = CorrectionPolicy::parse(config.correction);
    TeleportResult r = run_postselected(BeamState::from_direction(config.beam.vec), policy);
    BlochVector pre = bloch_of(r.neutron_pre);
    BlochVector post = bloch_of(*r.neutron_post);
    require_physical(pre, "pre-correction neutron");
    require_physical(post, "post-correction neutron");
    require_probability(r.probability, "outcome probability");
    require_probability(r.fidelity_pre, "fidelity_pre");
    require_probability(*r.fidelity_post, "fidelity_post");

    Table t{{"beam_axis", "outcome", "probability", "pre_px", "pre_py", "pre_pz", "post_px", "post_py", "post_pz",
             "fidelity_pre", "fidelity_post"},
            {}};
    std::vector<Cell> row{config.beam.label, std::string(bell_name(r.outcome)), r.probability};
    push_bloch(row, pre);
    push_bloch(row, post);
    row.emplace_back(r.fidelity_pre);
    row.emplace_back(*r.fidelity_post);
    t.rows.push_back(std::move(row));
    emit(config, t, out);
}

void cmd_predict(const RunConfig &config, std::ostream &out) {
    const ExperimentConfig &e = config.experiment;
    e.validate();
    if (config.correlation) {
        Table t{{"beam_axis", "beam_px", "beam_py", "beam_pz", "qt_px", "qt_py", "qt_pz", "conv_px", "conv_py",
                 "conv_pz", "dominant", "flip", "note"},
                {}};
        for (const CorrelationRow &r : correlation_table(e)) {
            std::vector<Cell> row{r.beam_axis};
            push_bloch(row, r.beam);
            push_bloch(row, r.qt_bloch);
            push_bloch(row, r.conventional_bloch);
            row.emplace_back(r.dominant);
            row.emplace_back(r.flip);
            row.emplace_back(r.note);
            t.rows.push_back(std::move(row));
        }
        emit(config, t, out);
        return;
    }

    ModelPrediction p = predict(e);
    Table t{{"beam_axis", "beam_px", "beam_py", "beam_pz", "model", "neutron_px", "neutron_py", "neutron_pz",
             "enhancement"},
            {}};
    for (const auto &[model, bloch] : {std::pair{"qt", p.qt_bloch}, std::pair{"conventional", p.conventional_bloch}}) {
        std::vector<Cell> row{config.beam.label};
        push_vec(row, e.beam_polarization());
        row.emplace_back(std::string(model));
        push_bloch(row, bloch);
        row.emplace_back(p.enhancement);
        t.rows.push_back(std::move(row));
    }
    emit(config, t, out);
}

void cmd_simulate(const RunConfig &config, int workers, std::ostream &out) {
    if (!config.has_seed) {
        throw InvalidArgumentError("simulate requires an explicit seed (--seed or 'seed = ...')");
    }
    SimulationResult sim = simulate(config.experiment, {workers});
    Table t{{"axis_x", "axis_y", "axis_z", "p_hat", "sigma", "n_events"}, {}};
    for (const AxisEstimate &a : sim.estimates) {
        if (a.p_hat && !(std::abs(*a.p_hat) <= 1)) {
            throw InvariantViolation("polarization estimate outside [-1,1]");
        }
        std::vector<Cell> row;
        push_vec(row, a.axis);
        row.emplace_back(a.p_hat ? Cell{*a.p_hat} : Cell{});
        row.emplace_back(a.sigma ? Cell{*a.sigma} : Cell{});
        row.emplace_back(a.n_events);
        t.rows.push_back(std::move(row));
    }
    std::int64_t accepted = 0;
    for (const EventRecord &r : sim.records) {
        accepted += r.accepted ? 1 : 0;
    }
    nlohmann::ordered_json summary{{"events", config.experiment.events},
                                   {"accepted", accepted},
                                   {"acceptance_fraction", acceptance_fraction(sim.records)}};
    emit(config, t, out, summary);
}

void cmd_scan(const RunConfig &config, std::ostream &out) {
    const char *axes[] = {"x", "-x", "y", "-y", "z", "-z"};
    const char *policies[] = {"none", "sigma_z", "ry_pi"};
    Table t{{"beam_axis", "policy", "probability", "fidelity_pre", "fidelity_post"}, {}};
    for (const char *axis : axes) {
        BeamState beam = BeamState::from_direction(parse_direction(axis).vec);
        for (const char *policy : policies) {
            TeleportResult r = run_postselected(beam, CorrectionPolicy::parse(policy));
            require_probability(r.fidelity_pre, "fidelity_pre");
            require_probability(*r.fidelity_post, "fidelity_post");
            t.rows.push_back({std::string(axis), std::string(policy), r.probability, r.fidelity_pre, *r.fidelity_post});
        }
    }
    emit(config, t, out);
}

int guarded(const std::function<void()> &body, std::ostream &err) {
    try {
        body();
    } catch (const InvariantViolation &e) {
        err << "nqt: invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error &e) {
        err << "nqt: " << e.what() << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Spin teleportation in polarized proton knockout on a polarized deuteron target", "nqt"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    KeyValues flags;
    int workers = 1;

    auto setting = [&](CLI::App *sub, const std::string &flag, const std::string &key, const std::string &help) {
        sub->add_option_function<std::string>(
            flag, [&flags, key](const std::string &v) { flags.emplace_back(key, v); }, help);
    };

    for (const char *name : {"teleport", "predict", "simulate", "scan"}) {
        CLI::App *sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file of 'key = value' lines");
        sub->add_option("--out", out_path, "output path (default: standard output)");
        setting(sub, "--format", "format", "csv or jsonl");
        setting(sub, "--beam", "beam_direction", "x|y|z (optionally signed), 'theta,phi' in degrees, or 'px,py,pz'");
        setting(sub, "--magnitude", "beam_magnitude", "beam polarization magnitude in [0,1]");
        setting(sub, "--epsilon", "epsilon", "contaminated fraction of selected events");
        setting(sub, "--kyy", "k_transfer", "conventional transfer coefficient K_y^y'");
        setting(sub, "--target", "target", "deuteron populations 'p+,p0,p-'");
        setting(sub, "--events", "events", "number of Monte Carlo events");
        setting(sub, "--seed", "seed", "random seed");
        setting(sub, "--correction", "correction", "none|sigma_z|ry_pi");
        setting(sub, "--axes", "analyzer_axes", "analyzer axes, e.g. x,y,z");
    }
    app.get_subcommand("simulate")->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app.get_subcommand("predict")->add_flag_callback(
        "--correlation", [&flags] { flags.emplace_back("correlation", "true"); },
        "emit the x/y/z beam-axis correlation table");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        std::ostringstream o, er;
        int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? kExitOk : kExitInvalidInput;
    }

    RunConfig config;
    config.subcommand = app.get_subcommands().front()->get_name();
    std::ostringstream doc;
    int code = guarded(
        [&] {
            if (!config_path.empty()) {
                for (const auto &[k, v] : read_config_file(config_path)) {
                    apply_setting(config, k, v);
                }
            }
            for (const auto &[k, v] : flags) {
                apply_setting(config, k, v);
            }
            if (config.subcommand == "teleport") {
                cmd_teleport(config, doc);
            } else if (config.subcommand == "predict") {
                cmd_predict(config, doc);
            } else if (config.subcommand == "simulate") {
                cmd_simulate(config, workers, doc);
            } else {
                cmd_scan(config, doc);
            }
        },
        err);
    if (code != kExitOk) {
        return code;
    }

    if (out_path.empty()) {
        out << doc.str();
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    file << doc.str();
    if (!file) {
        err << "nqt: cannot write " << out_path << "\n";
        return kExitInvalidInput;
    }
    return kExitOk;
}

}  // namespace nqt::cli
