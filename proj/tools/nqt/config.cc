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

#include "config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nqt/errors.h"
#include "nqt/teleport.h"

namespace nqt::cli {

namespace {

std::string_view trim(std::string_view s) {
    const char *ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) {
        return {};
    }
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    while (true) {
        auto p = s.find(sep);
        parts.push_back(trim(s.substr(0, p)));
        if (p == std::string_view::npos) {
            return parts;
        }
        s.remove_prefix(p + 1);
    }
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
    throw InvalidArgumentError("invalid value '" + std::string(value) + "' for " + std::string(key));
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') {
        text.remove_prefix(1);
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        bad_value(key, text);
    }
    return v;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        bad_value(key, text);
    }
    return v;
}

bool parse_bool(std::string_view key, std::string_view text) {
    if (text == "true") {
        return true;
    }
    if (text == "false") {
        return false;
    }
    bad_value(key, text);
}

std::optional<Vec3> named_axis(std::string_view name) {
    double sign = 1;
    if (!name.empty() && (name.front() == '-' || name.front() == '+')) {
        sign = name.front() == '-' ? -1 : 1;
        name.remove_prefix(1);
    }
    if (name == "x") {
        return Vec3{sign, 0, 0};
    }
    if (name == "y") {
        return Vec3{0, sign, 0};
    }
    if (name == "z") {
        return Vec3{0, 0, sign};
    }
    return std::nullopt;
}

}  // namespace

Direction parse_direction(std::string_view text) {
    text = trim(text);
    if (auto axis = named_axis(text)) {
        return {std::string(text), *axis};
    }
    auto parts = split(text, ',');
    Vec3 v;
    if (parts.size() == 2) {
        double theta = parse_double("direction theta", parts[0]) * std::numbers::pi / 180;
        double phi = parse_double("direction phi", parts[1]) * std::numbers::pi / 180;
        v = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    } else if (parts.size() == 3) {
        v = {parse_double("direction", parts[0]), parse_double("direction", parts[1]),
             parse_double("direction", parts[2])};
        require_unit(v, "direction");
    } else {
        throw InvalidArgumentError("invalid direction '" + std::string(text) +
                                   "': expected x|y|z (optionally signed), 'theta,phi' in degrees, or 'px,py,pz'");
    }
    return {std::string(text), v};
}

std::vector<Direction> parse_axis_list(std::string_view text) {
    std::vector<Direction> axes;
    for (auto part : split(text, ',')) {
        auto axis = named_axis(part);
        if (!axis) {
            throw InvalidArgumentError("invalid analyzer axis '" + std::string(part) + "'");
        }
        axes.push_back({std::string(part), *axis});
    }
    return axes;
}

TargetSpec parse_target(std::string_view text) {
    auto parts = split(text, ',');
    if (parts.size() != 3) {
        throw InvalidArgumentError("target must be 'p+,p0,p-'");
    }
    return TargetSpec::make(parse_double("target", parts[0]), parse_double("target", parts[1]),
                            parse_double("target", parts[2]));
}

KeyValues parse_config_text(std::string_view text) {
    KeyValues out;
    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        line_no++;
        std::string_view line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw InvalidArgumentError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) {
            throw InvalidArgumentError("config line " + std::to_string(line_no) + ": empty key");
        }
        for (const auto &[k, v] : out) {
            if (k == key) {
                throw InvalidArgumentError("config line " + std::to_string(line_no) + ": duplicate key " + key);
            }
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

KeyValues read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgumentError("cannot read config file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void apply_setting(RunConfig &config, std::string_view key, std::string_view value) {
    ExperimentConfig &e = config.experiment;
    if (key == "beam_direction") {
        config.beam = parse_direction(value);
        e.beam_direction = config.beam.vec;
    } else if (key == "beam_magnitude") {
        e.beam_magnitude = parse_double(key, value);
    } else if (key == "epsilon") {
        e.epsilon = parse_double(key, value);
    } else if (key == "k_transfer") {
        e.k_transfer = parse_double(key, value);
    } else if (key == "target") {
        e.target = parse_target(value);
    } else if (key == "events") {
        e.events = parse_integer<std::int64_t>(key, value);
    } else if (key == "seed") {
        if (value == "none") {
            config.has_seed = false;
            e.seed = 0;
        } else {
            e.seed = parse_integer<std::uint64_t>(key, value);
            config.has_seed = true;
        }
    } else if (key == "beam_energy_mev") {
        e.beam_energy_mev = parse_double(key, value);
    } else if (key == "analyzer_axes") {
        config.axes = parse_axis_list(value);
        e.analyzer_axes.clear();
        for (const auto &a : config.axes) {
            e.analyzer_axes.push_back(a.vec);
        }
    } else if (key == "correction") {
        config.correction = CorrectionPolicy::parse(value).name();
    } else if (key == "format") {
        if (value == "csv") {
            config.format = OutputFormat::csv;
        } else if (value == "jsonl") {
            config.format = OutputFormat::jsonl;
        } else {
            bad_value(key, value);
        }
    } else if (key == "correlation") {
        config.correlation = parse_bool(key, value);
    } else if (key == "subcommand") {
        if (value != config.subcommand) {
            throw InvalidArgumentError("config is for subcommand '" + std::string(value) + "', not '" +
                                       config.subcommand + "'");
        }
    } else if (key == "tool_version") {
        if (value != kToolVersion) {
            throw InvalidArgumentError("config was written by tool version " + std::string(value));
        }
    } else {
        throw InvalidArgumentError("unknown config key '" + std::string(key) + "'");
    }
}

std::string format_exact(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v == 0 ? 0.0 : v);
    return std::string(buf, ptr);
}

KeyValues manifest(const RunConfig &config) {
    const ExperimentConfig &e = config.experiment;
    std::string axes;
    for (const auto &a : config.axes) {
        axes += (axes.empty() ? "" : ",") + a.label;
    }
    return {
        {"subcommand", config.subcommand},
        {"tool_version", std::string(kToolVersion)},
        {"beam_direction", config.beam.label},
        {"beam_magnitude", format_exact(e.beam_magnitude)},
        {"epsilon", format_exact(e.epsilon)},
        {"k_transfer", format_exact(e.k_transfer)},
        {"target", format_exact(e.target.p_plus()) + "," + format_exact(e.target.p_zero()) + "," +
                       format_exact(e.target.p_minus())},
        {"events", std::to_string(e.events)},
        {"seed", config.has_seed ? std::to_string(e.seed) : "none"},
        {"beam_energy_mev", format_exact(e.beam_energy_mev)},
        {"analyzer_axes", axes},
        {"correction", config.correction},
        {"format", config.format == OutputFormat::csv ? "csv" : "jsonl"},
        {"correlation", config.correlation ? "true" : "false"},
    };
}

}  // namespace nqt::cli
