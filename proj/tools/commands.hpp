// Copyright 2026 The eppflags Authors
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

#ifndef EPPFLAGS_TOOLS_COMMANDS_HPP
#define EPPFLAGS_TOOLS_COMMANDS_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "eppflags/config.hpp"
#include "eppflags/io.hpp"

namespace eppflags::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNotConverged = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags, parameters or config files.
class UsageError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct KeyHelp {
    std::string key;
    std::string fallback;
    std::string description;
};

const std::vector<std::string>& command_names();
std::string command_summary(const std::string& command);
/// Config keys a subcommand reads, with defaults.
const std::vector<KeyHelp>& command_keys(const std::string& command);

/// What one subcommand computed, before anything is written.
struct CommandResult {
    CsvTable table{{}};
    /// Full JSON document for --format json.
    nlohmann::ordered_json json;
    /// Parameters as used, defaults filled in.
    Config resolved;
    /// False if any requested computation did not converge.
    bool ok = true;
    std::string message;
};

/// Runs a subcommand in memory. Throws UsageError for bad parameters.
CommandResult compute(const std::string& command, const Config& params);

struct Invocation {
    std::string command;
    Config params;
    std::string out_dir = ".";
    std::string format = "csv";
};

struct Outcome {
    int exit_code = kExitOk;
    /// Written files, data first, then the manifest.
    std::vector<std::string> outputs;
    std::string message;
};

/// Runs and writes `<out>/<command>.<format>` plus `<command>.manifest.json`.
Outcome execute(const Invocation& invocation);

/// Reads either a key-value config file or a manifest written by execute().
/// For a manifest the subcommand must match and its format becomes the
/// default; `format` is left untouched otherwise.
Config load_params(const std::string& path, const std::string& command, std::string* format);

nlohmann::ordered_json manifest_json(const Invocation& invocation, const CommandResult& result,
                                     const std::vector<std::string>& outputs);

}  // namespace eppflags::cli

#endif  // EPPFLAGS_TOOLS_COMMANDS_HPP
