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

// Run configuration for the nqt command line tool.
//
// Config files are flat `key = value` lines; `#` starts a comment. Keys are
// the ExperimentConfig field names plus the tool-level keys `subcommand`,
// `tool_version`, `correction`, `format` and `correlation`. The same
// key/value pairs, fully resolved, form the run manifest written at the top
// of every output, so a manifest can be fed back as a config file.

#ifndef NQT_TOOLS_CONFIG_H
#define NQT_TOOLS_CONFIG_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nqt/reaction.h"

namespace nqt::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// A direction given by name ("x", "-y", ...), by "theta,phi" in degrees, or
/// as "px,py,pz". `label` is the text it was parsed from.
struct Direction {
    std::string label;
    Vec3 vec;
};

/// Throws InvalidArgumentError on malformed input or a non-unit vector.
Direction parse_direction(std::string_view text);
/// Comma-separated list of axis names, e.g. "x,y,-z".
std::vector<Direction> parse_axis_list(std::string_view text);
TargetSpec parse_target(std::string_view text);

enum class OutputFormat { csv, jsonl };

struct RunConfig {
    std::string subcommand;
    ExperimentConfig experiment;
    Direction beam{"z", {0, 0, 1}};
    std::vector<Direction> axes{{"x", {1, 0, 0}}, {"y", {0, 1, 0}}, {"z", {0, 0, 1}}};
    bool has_seed = false;
    std::string correction = "sigma_z";
    OutputFormat format = OutputFormat::csv;
    bool correlation = false;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Reads `key = value` lines. Throws InvalidArgumentError on unreadable
/// files, malformed lines and duplicate keys.
KeyValues read_config_file(const std::string &path);
KeyValues parse_config_text(std::string_view text);

/// Applies one key. Throws InvalidArgumentError for unknown keys or bad values.
void apply_setting(RunConfig &config, std::string_view key, std::string_view value);

/// Fully resolved settings in a fixed key order; values round-trip exactly
/// through apply_setting.
KeyValues manifest(const RunConfig &config);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_exact(double v);

}  // namespace nqt::cli

#endif
