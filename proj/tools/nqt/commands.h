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

#ifndef NQT_TOOLS_COMMANDS_H
#define NQT_TOOLS_COMMANDS_H

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "config.h"

namespace nqt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitInvariant = 2;

/// Runs the tool. `args` excludes the program name. Output goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Runs `body`, mapping InvariantViolation to kExitInvariant and any other
/// nqt::Error to kExitInvalidInput, with the message written to `err`.
int guarded(const std::function<void()> &body, std::ostream &err);

/// The individual workflows, writing a complete output document (manifest
/// plus table) to `out`. Throw nqt::Error subclasses on failure.
void cmd_teleport(const RunConfig &config, std::ostream &out);
void cmd_predict(const RunConfig &config, std::ostream &out);
void cmd_simulate(const RunConfig &config, int workers, std::ostream &out);
void cmd_scan(const RunConfig &config, std::ostream &out);

}  // namespace nqt::cli

#endif
