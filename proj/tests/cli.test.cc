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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "commands.h"
#include "config.h"
#include "gtest/gtest.h"
#include "nqt/errors.h"

using namespace nqt;
using namespace nqt::cli;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_tool(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

// Data rows of a CSV document as column -> value maps; comment lines skipped.
std::vector<std::map<std::string, std::string>> csv_rows(const std::string &doc) {
    std::istringstream in(doc);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::map<std::string, std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto cells = split_line(line);
        if (header.empty()) {
            header = cells;
            continue;
        }
        std::map<std::string, std::string> row;
        for (std::size_t i = 0; i < header.size() && i < cells.size(); i++) {
            row[header[i]] = cells[i];
        }
        rows.push_back(row);
    }
    return rows;
}

std::string manifest_block(const std::string &doc) {
    std::istringstream in(doc);
    std::string line, out;
    std::getline(in, line);  // "# nqt run manifest"
    while (std::getline(in, line) && line.rfind("# ", 0) == 0) {
        out += line.substr(2) + "\n";
    }
    return out;
}

std::string body_after_manifest(const std::string &doc) {
    auto pos = doc.find("\n", doc.find("# correlation = "));
    return doc.substr(pos + 1);
}

class TempDir {
   public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() /
                ("nqt_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                 ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::filesystem::remove_all(path_);
    }
    std::string file(const std::string &name, const std::string &contents = "") const {
        auto p = (path_ / name).string();
        if (!contents.empty()) {
            std::ofstream(p) << contents;
        }
        return p;
    }

   private:
    std::filesystem::path path_;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(cli, teleport_sigma_z_recovers_x_beam) {
    auto r = run_tool({"teleport", "--beam", "x", "--correction", "sigma_z"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0]["outcome"], "psi_minus");
    EXPECT_EQ(rows[0]["probability"], "0.25");
    EXPECT_EQ(rows[0]["fidelity_post"], "1");
    EXPECT_EQ(rows[0]["pre_px"], "-1");
    EXPECT_EQ(rows[0]["post_px"], "1");
}

TEST(cli, teleport_z_beam_without_correction) {
    auto r = run_tool({"teleport", "--beam", "z", "--correction", "none"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(csv_rows(r.out)[0]["fidelity_pre"], "1");
}

TEST(cli, malformed_beam_is_rejected) {
    for (const char *beam : {"q", "1,2,3,4", "1,1,1", "x,", "abc,3"}) {
        auto r = run_tool({"teleport", "--beam", beam});
        EXPECT_EQ(r.code, kExitInvalidInput) << beam;
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(cli, predict_y_beam) {
    auto r = run_tool({"predict", "--beam", "y", "--epsilon", "0.04", "--kyy", "-0.1"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0]["model"], "qt");
    EXPECT_EQ(rows[0]["neutron_py"], "-0.964");
    EXPECT_EQ(rows[1]["model"], "conventional");
    EXPECT_EQ(rows[1]["neutron_py"], "-0.1");
    EXPECT_EQ(rows[0]["enhancement"], "9.64");
}

TEST(cli, predict_correlation_table) {
    auto r = run_tool({"predict", "--correlation"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0]["flip"], "true");
    EXPECT_EQ(rows[0]["dominant"], "-0.96");
    EXPECT_EQ(rows[1]["flip"], "true");
    EXPECT_FALSE(rows[1]["note"].empty());
    EXPECT_EQ(rows[2]["flip"], "false");
}

TEST(cli, predict_rejects_out_of_range_config) {
    TempDir dir;
    auto cfg = dir.file("bad.cfg", "# contaminated\nepsilon = 1.5\n");
    auto r = run_tool({"predict", "--config", cfg});
    EXPECT_EQ(r.code, kExitInvalidInput);
    EXPECT_NE(r.err.find("epsilon"), std::string::npos);
}

TEST(cli, config_errors) {
    TempDir dir;
    EXPECT_EQ(run_tool({"predict", "--config", dir.file("missing.cfg")}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--config", dir.file("a.cfg", "colour = blue\n")}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--config", dir.file("b.cfg", "epsilon 0.1\n")}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--config", dir.file("c.cfg", "epsilon = 0.1\nepsilon = 0.2\n")}).code,
              kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--config", dir.file("d.cfg", "subcommand = simulate\n")}).code,
              kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--target", "0.5,0.6,0"}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--epsilon", "abc"}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"predict", "--format", "xml"}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({"frobnicate"}).code, kExitInvalidInput);
    EXPECT_EQ(run_tool({}).code, kExitInvalidInput);
}

TEST(cli, flags_override_config_file) {
    TempDir dir;
    auto cfg = dir.file("o.cfg", "beam_direction = x\nepsilon = 0.5\nk_transfer = -0.3\n");
    auto r = run_tool({"predict", "--config", cfg, "--epsilon", "0"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto m = manifest_block(r.out);
    EXPECT_NE(m.find("epsilon = 0\n"), std::string::npos);
    EXPECT_NE(m.find("k_transfer = -0.3\n"), std::string::npos);
    EXPECT_NE(m.find("beam_direction = x\n"), std::string::npos);
    EXPECT_EQ(csv_rows(r.out)[0]["neutron_px"], "-1");
}

TEST(cli, simulate_requires_seed) {
    auto r = run_tool({"simulate", "--events", "100"});
    EXPECT_EQ(r.code, kExitInvalidInput);
    EXPECT_NE(r.err.find("seed"), std::string::npos);
}

TEST(cli, simulate_is_byte_identical) {
    TempDir dir;
    auto a = dir.file("a.csv"), b = dir.file("b.csv"), c = dir.file("c.csv");
    ASSERT_EQ(run_tool({"simulate", "--events", "30000", "--seed", "7", "--out", a}).code, 0);
    ASSERT_EQ(run_tool({"simulate", "--events", "30000", "--seed", "7", "--out", b}).code, 0);
    ASSERT_EQ(run_tool({"simulate", "--events", "30000", "--seed", "7", "--workers", "4", "--out", c}).code, 0);
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
    EXPECT_EQ(slurp(a), slurp(c));
    auto rows = csv_rows(slurp(a));
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0]["axis_x"], "1");
}

TEST(cli, simulate_undefined_axis_renders_nan) {
    auto r = run_tool({"simulate", "--events", "1", "--seed", "1", "--epsilon", "1", "--axes", "x,y"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    EXPECT_EQ(rows[1]["p_hat"], "nan");
    EXPECT_EQ(rows[1]["n_events"], "0");
}

TEST(cli, scan_covers_six_axes_and_three_policies) {
    auto r = run_tool({"scan"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 18u);
    for (auto &row : rows) {
        double post = std::stod(row["fidelity_post"]);
        if (row["policy"] == "sigma_z") {
            EXPECT_NEAR(post, 1, 1e-12);
        } else if (row["policy"] == "ry_pi") {
            bool x_axis = row["beam_axis"] == "x" || row["beam_axis"] == "-x";
            EXPECT_NEAR(post, x_axis ? 1 : 0, 1e-12) << row["beam_axis"];
        }
    }
}

TEST(cli, jsonl_output) {
    auto r = run_tool({"simulate", "--events", "2000", "--seed", "3", "--format", "jsonl"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::vector<nlohmann::json> lines;
    while (std::getline(in, line)) {
        lines.push_back(nlohmann::json::parse(line));
    }
    ASSERT_EQ(lines.size(), 5u);
    EXPECT_EQ(lines[0]["manifest"]["seed"], "3");
    EXPECT_EQ(lines[0]["manifest"]["format"], "jsonl");
    EXPECT_TRUE(lines[1].contains("p_hat"));
    EXPECT_EQ(lines[4]["summary"]["events"], 2000);
    double frac = lines[4]["summary"]["acceptance_fraction"];
    EXPECT_GT(frac, 0.2);
    EXPECT_LT(frac, 0.35);
}

TEST(cli, angle_beam_label_is_quoted) {
    auto r = run_tool({"predict", "--beam", "60,0"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\n\"60,0\",0.866025403784,0,0.5,qt,"), std::string::npos) << r.out;
}

TEST(cli, manifest_reproduces_output) {
    TempDir dir;
    const std::vector<std::vector<std::string>> runs = {
        {"teleport", "--beam", "35,20", "--correction", "ry_pi"},
        {"predict", "--beam", "0.6,0,0.8", "--magnitude", "0.7", "--epsilon", "0.13", "--target", "0.1,0.85,0.05"},
        {"predict", "--correlation", "--kyy", "-0.25", "--format", "jsonl"},
        {"simulate", "--events", "5000", "--seed", "11", "--axes", "z,-x", "--beam", "-y"},
        {"scan", "--format", "jsonl"},
    };
    for (const auto &args : runs) {
        auto first = run_tool(args);
        ASSERT_EQ(first.code, 0) << first.err;
        std::string manifest_text;
        std::string body;
        if (first.out.rfind("{\"manifest\"", 0) == 0) {
            auto nl = first.out.find('\n');
            auto m = nlohmann::ordered_json::parse(first.out.substr(0, nl))["manifest"];
            for (auto &[k, v] : m.items()) {
                manifest_text += k + " = " + v.get<std::string>() + "\n";
            }
            body = first.out.substr(nl + 1);
        } else {
            manifest_text = manifest_block(first.out);
            body = body_after_manifest(first.out);
        }
        auto cfg = dir.file("replay.cfg", manifest_text);
        auto second = run_tool({args[0], "--config", cfg});
        ASSERT_EQ(second.code, 0) << second.err;
        EXPECT_EQ(second.out, first.out) << args[0];
        EXPECT_NE(second.out.find(body), std::string::npos);
    }
}

TEST(cli, resolved_config_round_trip) {
    RunConfig config;
    config.subcommand = "simulate";
    for (const auto &[k, v] : parse_config_text("beam_direction = 12.5,-40\nbeam_magnitude = 0.3333333333333333\n"
                                                "epsilon = 0.04\nk_transfer = -0.1\ntarget = 0.2,0.7,0.1\n"
                                                "seed = 18446744073709551615\nanalyzer_axes = -z,y\n"
                                                "beam_energy_mev = 170.25\nformat = jsonl\n")) {
        apply_setting(config, k, v);
    }
    RunConfig replay;
    replay.subcommand = "simulate";
    for (const auto &[k, v] : manifest(config)) {
        apply_setting(replay, k, v);
    }
    EXPECT_EQ(manifest(replay), manifest(config));
    EXPECT_EQ(replay.experiment.beam_direction, config.experiment.beam_direction);
    EXPECT_EQ(replay.experiment.beam_magnitude, config.experiment.beam_magnitude);
    EXPECT_EQ(replay.experiment.target, config.experiment.target);
    EXPECT_EQ(replay.experiment.seed, 18446744073709551615ULL);
    EXPECT_EQ(replay.experiment.analyzer_axes.size(), 2u);
}

TEST(cli, format_exact_round_trips) {
    for (double v : {0.1, 1.0 / 3, -0.964, 1e-300, 170.0, -0.0}) {
        EXPECT_EQ(std::stod(format_exact(v)), v);
    }
    EXPECT_EQ(format_exact(-0.0), "0");
}

TEST(cli, parse_direction) {
    EXPECT_EQ(parse_direction("-y").vec, (Vec3{0, -1, 0}));
    EXPECT_EQ(parse_direction("+z").vec, (Vec3{0, 0, 1}));
    auto d = parse_direction(" 90, 90 ");
    EXPECT_NEAR(d.vec.y, 1, 1e-15);
    EXPECT_THROW(parse_direction(""), InvalidArgumentError);
    EXPECT_THROW(parse_direction("0,0,0"), InvalidArgumentError);
    EXPECT_THROW(parse_axis_list("x,w"), InvalidArgumentError);
}

TEST(cli, exit_codes) {
    std::ostringstream err;
    EXPECT_EQ(guarded([] {}, err), kExitOk);
    EXPECT_EQ(guarded([] { throw InvariantViolation("norm 1.5"); }, err), kExitInvariant);
    EXPECT_EQ(guarded([] { throw InvalidArgumentError("bad"); }, err), kExitInvalidInput);
    EXPECT_EQ(guarded([] { throw DimensionError("bad"); }, err), kExitInvalidInput);
    EXPECT_NE(err.str().find("invariant violation: norm 1.5"), std::string::npos);
}

TEST(cli, help_exits_cleanly) {
    auto r = run_tool({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("simulate"), std::string::npos);
}
