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

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "eppflags/config.hpp"

namespace {

using namespace eppflags;
using namespace eppflags::cli;

struct Flags {
    std::string config_path;
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::uint64_t> max_iter;
    std::string out_dir = ".";
    std::optional<std::string> format;
};

std::string key_footer(const std::string& command) {
    std::ostringstream os;
    os << "Config keys (file via --config, or --set key=value):\n";
    for (const KeyHelp& k : command_keys(command)) {
        os << "  " << k.key;
        if (!k.fallback.empty()) {
            os << " [default " << k.fallback << "]";
        }
        os << "\n      " << k.description << "\n";
    }
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flagged entanglement-purification toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", EPPFLAGS_VERSION);

    std::map<std::string, Flags> flags;
    for (const std::string& name : command_names()) {
        Flags& f = flags[name];
        CLI::App* sub = app.add_subcommand(name, command_summary(name));
        sub->add_option("--config", f.config_path, "Key-value config file or a manifest to replay");
        sub->add_option("--set", f.overrides, "Override one config key (key=value); repeatable");
        sub->add_option("--seed", f.seed, "Random seed (U64)");
        sub->add_option("--out", f.out_dir, "Output directory")->capture_default_str();
        sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--tol", f.tol, "Convergence tolerance");
        sub->add_option("--max-iter", f.max_iter, "Iteration budget");
        sub->footer(key_footer(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const Flags& f = flags[command];
    try {
        Invocation inv;
        inv.command = command;
        inv.out_dir = f.out_dir;
        if (!f.config_path.empty()) {
            inv.params = load_params(f.config_path, command, &inv.format);
        }
        for (const std::string& o : f.overrides) {
            inv.params.set_assignment(o);
        }
        if (f.seed) {
            inv.params.set("seed", std::to_string(*f.seed));
        }
        if (f.tol) {
            inv.params.set("tol", format_double(*f.tol));
        }
        if (f.max_iter) {
            inv.params.set("max_iter", std::to_string(*f.max_iter));
        }
        if (f.format) {
            inv.format = *f.format;
        }
        const Outcome outcome = execute(inv);
        for (const std::string& path : outcome.outputs) {
            std::cout << path << "\n";
        }
        if (!outcome.message.empty()) {
            std::cerr << command << ": " << outcome.message << "\n";
        }
        return outcome.exit_code;
    } catch (const UsageError& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return kExitUsage;
    }
}
