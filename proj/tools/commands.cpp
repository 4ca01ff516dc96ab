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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "eppflags/dynamics.hpp"
#include "eppflags/montecarlo.hpp"
#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace eppflags::cli {

namespace {

using nlohmann::ordered_json;

// Reads parameters and records every value used, defaults included, so the
// manifest can replay the run.
class Params {
   public:
    explicit Params(const Config& input) : in_(input), resolved_(input) {}

    const Config& input() const { return in_; }
    Config& resolved() { return resolved_; }

    double real(const std::string& key, double fallback) {
        const double v = in_.get_double(key, fallback);
        resolved_.set(key, format_double(v));
        return v;
    }
    std::uint64_t count(const std::string& key, std::uint64_t fallback) {
        const std::uint64_t v = in_.get_uint(key, fallback);
        resolved_.set(key, std::to_string(v));
        return v;
    }
    bool flag(const std::string& key, bool fallback) {
        const bool v = in_.get_bool(key, fallback);
        resolved_.set(key, v ? "true" : "false");
        return v;
    }
    std::string text(const std::string& key, const std::string& fallback) {
        std::string v = in_.get_string(key, fallback);
        resolved_.set(key, v);
        return v;
    }

   private:
    const Config& in_;
    Config resolved_;
};

const std::vector<std::string> kCellColumns = [] {
    std::vector<std::string> out;
    for (int i = 0; i < 16; ++i) {
        out.push_back(cell_name(i));
    }
    return out;
}();

std::vector<std::string> with_cells(std::vector<std::string> head) {
    head.insert(head.end(), kCellColumns.begin(), kCellColumns.end());
    return head;
}

ordered_json table_json(const std::string& command, const CsvTable& table) {
    return {{"subcommand", command}, {"columns", table.header()}, {"rows", table.to_json()}};
}

IterationOptions iteration_options(Params& p) {
    IterationOptions o;
    o.tolerance = p.real("tol", o.tolerance);
    o.max_iterations = p.count("max_iter", o.max_iterations);
    return o;
}

bool has_noise_keys(const Config& c) {
    return c.contains("model") || std::any_of(c.entries().begin(), c.entries().end(), [](const auto& kv) {
               return kv.first.rfind("f.", 0) == 0;
           });
}

NoiseModel noise(Params& p) { return has_noise_keys(p.input()) ? noise_from_config(p.input()) : NoiseModel(); }

BinaryNoiseModel binary_noise(Params& p) {
    const Config& c = p.input();
    if (!c.contains("model") && !c.contains("f0") && !c.contains("f00")) {
        throw UsageError("binary mode needs f0 (uncorrelated flips) or f00, f01, f10, f11");
    }
    return binary_noise_from_config(c);
}

BellDiagonalState initial_bell(Params& p) {
    if (p.input().contains("initial.A")) {
        return BellDiagonalState::from_letters(p.real("initial.A", 0.0), p.real("initial.B", 0.0),
                                               p.real("initial.C", 0.0), p.real("initial.D", 0.0));
    }
    return BellDiagonalState::werner(p.real("initial.F", kProbeStartFidelity));
}

BinaryFlaggedState initial_binary(Params& p) {
    if (p.input().contains("initial.A0")) {
        return {p.real("initial.A0", 0.0), p.real("initial.A1", 0.0), p.real("initial.B0", 0.0),
                p.real("initial.B1", 0.0)};
    }
    return BinaryFlaggedState::with_fidelity(p.real("initial.F", kProbeStartFidelity));
}

std::string mode(Params& p) {
    const std::string m = p.text("mode", "flagged");
    if (m != "flagged" && m != "binary" && m != "ideal") {
        throw UsageError("mode must be flagged, binary or ideal, got '" + m + "'");
    }
    return m;
}

void add_state_row(CsvTable& t, std::size_t n, const FlaggedEnsembleState& s, double keep, bool first) {
    t.row().cell(static_cast<std::uint64_t>(n)).cell(fidelity(s)).cell(conditional_fidelity(s));
    if (first) {
        t.cell(std::string());
    } else {
        t.cell(keep);
    }
    for (int i = 0; i < 16; ++i) {
        t.cell(s[i]);
    }
}

CommandResult cmd_iterate(Params& p) {
    const std::string m = mode(p);
    const std::size_t steps = p.count("steps", 20);
    CommandResult r;
    r.table = CsvTable(with_cells({"n", "F", "F_cond", "N_keep"}));
    try {
        if (m == "flagged") {
            const QuadraticMap map = generate_map(noise(p));
            FlaggedEnsembleState s = embed(initial_bell(p));
            add_state_row(r.table, 0, s, 1.0, true);
            for (std::size_t n = 1; n <= steps; ++n) {
                const auto next = step(s, map);
                s = next.state;
                add_state_row(r.table, n, s, next.keep_probability, false);
            }
        } else if (m == "binary") {
            const BinaryNoiseModel bn = binary_noise(p);
            BinaryFlaggedState s = initial_binary(p);
            add_state_row(r.table, 0, embed(s), 1.0, true);
            for (std::size_t n = 1; n <= steps; ++n) {
                const auto next = binary_step(s, bn);
                s = next.state;
                add_state_row(r.table, n, embed(s), next.keep_probability, false);
            }
        } else {
            BellDiagonalState s = initial_bell(p);
            add_state_row(r.table, 0, embed(s), 1.0, true);
            for (std::size_t n = 1; n <= steps; ++n) {
                const auto next = ideal_step(s);
                s = next.state;
                add_state_row(r.table, n, embed(s), next.keep_probability, false);
            }
        }
    } catch (const EnsembleAnnihilated& e) {
        r.ok = false;
        r.message = e.what();
    }
    r.json = table_json("iterate", r.table);
    return r;
}

struct FixpointRow {
    RegimeReport report;
    ordered_json state;
    double residual;
};

FixpointRow fixpoint_once(Params& p, const std::string& m, const IterationOptions& o) {
    if (m == "binary") {
        const auto res = iterate_to_fixpoint(initial_binary(p), binary_noise(p), o);
        return {regime_of(res), to_json(res.state), res.residual};
    }
    const QuadraticMap map = generate_map(m == "ideal" ? NoiseModel() : noise(p));
    const auto res = iterate_to_fixpoint(embed(initial_bell(p)), map, o);
    return {regime_of(res), to_json(res.state), res.residual};
}

CommandResult cmd_fixpoint(Params& p) {
    const std::string m = mode(p);
    const IterationOptions o = iteration_options(p);
    CommandResult r;
    r.table = CsvTable({"parameter", "F_inf", "F_cond_inf", "iterations", "regime"});
    ordered_json details = ordered_json::array();

    std::vector<std::pair<std::string, double>> sweep;
    std::string key;
    if (p.input().contains("sweep.key")) {
        key = p.text("sweep.key", "");
        const double from = p.real("sweep.from", 0.0);
        const double to = p.real("sweep.to", 0.0);
        const std::size_t points = p.count("sweep.points", 11);
        if (points < 1) {
            throw UsageError("sweep.points must be positive");
        }
        for (std::size_t i = 0; i < points; ++i) {
            const double v = points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);
            sweep.emplace_back(key, v);
        }
    }
    auto run_one = [&](Params& q, const std::string& parameter_text, double parameter) {
        const FixpointRow row = fixpoint_once(q, m, o);
        r.table.row();
        if (parameter_text.empty()) {
            r.table.cell(std::string());
        } else {
            r.table.cell(parameter);
        }
        r.table.cell(row.report.fidelity)
            .cell(row.report.conditional_fidelity)
            .cell(static_cast<std::uint64_t>(row.report.iterations))
            .cell(to_string(row.report.regime));
        ordered_json d = to_json(row.report);
        if (!parameter_text.empty()) {
            d["parameter"] = parameter;
        }
        d["residual"] = row.residual;
        d["state"] = row.state;
        details.push_back(d);
        if (!row.report.converged) {
            r.ok = false;
            r.message = row.report.warning;
        }
    };
    if (sweep.empty()) {
        run_one(p, "", 0.0);
    } else {
        for (const auto& [k, v] : sweep) {
            Config point = p.input();
            point.set(k, format_double(v));
            Params q(point);
            run_one(q, k, v);
        }
    }
    r.json = {{"subcommand", "fixpoint"}, {"mode", m}, {"results", details}};
    return r;
}

CommandResult cmd_critical(Params& p) {
    const std::string family_name = p.text("family", "binary");
    NoiseFamily family;
    try {
        family = parse_noise_family(family_name);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool binary = family == NoiseFamily::kBinaryUncorrelated;
    const double lower = p.real("lower", binary ? 0.75 : 0.85);
    const double upper = p.real("upper", binary ? 0.85 : 0.95);
    if (!(lower < upper)) {
        throw UsageError("bracket must satisfy lower < upper");
    }
    CriticalOptions options;
    options.probe = default_probe_options(family);
    options.halvings = p.count("halvings", options.halvings);
    options.probe.threshold = p.real("threshold", options.probe.threshold);
    options.probe.tolerance = p.real("tol", options.probe.tolerance);
    options.probe.max_iterations = p.count("max_iter", options.probe.max_iterations);
    if (options.halvings < 40) {
        throw UsageError("halvings must be at least 40");
    }
    const CriticalResult c = find_critical(family, lower, upper, options);
    CommandResult r;
    r.table = CsvTable({"family", "critical", "lower", "upper", "width", "halvings"});
    r.table.row()
        .cell(family_name)
        .cell(c.critical)
        .cell(c.lower)
        .cell(c.upper)
        .cell(c.upper - c.lower)
        .cell(static_cast<std::uint64_t>(c.halvings));
    r.json = to_json(c);
    r.json["family"] = family_name;
    return r;
}

CommandResult cmd_scan(Params& p) {
    const double from = p.real("scan.from", 0.5);
    const double to = p.real("scan.to", 1.0);
    const std::size_t points = p.count("scan.points", 11);
    const std::size_t samples = p.count("samples", 200);
    const std::uint64_t seed = p.count("seed", 1);
    const unsigned threads = static_cast<unsigned>(p.count("threads", 1));
    const IterationOptions o = iteration_options(p);
    if (points < 1 || samples < 1 || threads < 1) {
        throw UsageError("scan.points, samples and threads must be positive");
    }
    CommandResult r;
    r.table = CsvTable({"f00", "samples", "high_noise", "intermediate", "security", "warnings"});
    for (std::size_t i = 0; i < points; ++i) {
        const double f00 = points == 1 ? from : from + (to - from) * static_cast<double>(i) / (points - 1);
        const RegimeHistogram h = regime_scan(f00, samples, seed, o, threads);
        r.table.row()
            .cell(f00)
            .cell(static_cast<std::uint64_t>(h.total()))
            .cell(h.fraction(Regime::kHighNoise))
            .cell(h.fraction(Regime::kIntermediate))
            .cell(h.fraction(Regime::kSecurity))
            .cell(static_cast<std::uint64_t>(h.warnings));
        if (h.warnings > 0) {
            r.ok = false;
            r.message = "some samples did not converge; counted as intermediate";
        }
    }
    r.json = table_json("scan", r.table);
    return r;
}

CommandResult cmd_mc(Params& p) {
    McConfig cfg = mc_config_from_config(p.input());
    p.count("n_pairs", cfg.n_pairs);
    p.count("rounds", cfg.rounds);
    p.count("seed", cfg.seed);
    p.count("threads", cfg.threads);
    p.flag("track_flags", cfg.track_flags);
    if (!p.input().contains("initial.A")) {
        p.real("initial.F", cfg.initial.A());
    }
    CommandResult r;
    r.table = CsvTable(with_cells({"round", "remaining", "F_hat", "F_cond_hat"}));
    for (const RoundStats& s : run(cfg)) {
        r.table.row()
            .cell(static_cast<std::uint64_t>(s.round))
            .cell(static_cast<std::uint64_t>(s.pairs_remaining))
            .cell(s.f_hat)
            .cell(s.f_cond_hat);
        for (std::uint64_t c : s.cells) {
            r.table.cell(c);
        }
    }
    r.json = table_json("mc", r.table);
    return r;
}

CommandResult cmd_curve(Params& p) {
    const BinaryNoiseModel bn = binary_noise(p);
    const std::size_t n_max = p.count("n_max", 8);
    const std::size_t points = p.count("segment_points", 64);
    if (n_max < 1 || points < 2) {
        throw UsageError("n_max must be positive and segment_points at least 2");
    }
    BinaryFlaggedState seed = default_curve_seed();
    if (p.input().contains("seed.A0")) {
        seed = {p.real("seed.A0", 0.0), p.real("seed.A1", 0.0), p.real("seed.B0", 0.0), p.real("seed.B1", 0.0)};
    }
    CommandResult r;
    r.table = CsvTable({"segment", "t", "F_cond", "F_cond_next"});
    try {
        const auto curve = purification_curve(bn, n_max, points, seed);
        for (const CurvePoint& c : curve) {
            r.table.row().cell(static_cast<std::uint64_t>(c.segment)).cell(c.t).cell(c.f_cond).cell(c.f_cond_next);
        }
        r.json = table_json("curve", r.table);
        try {
            r.json["terminal_slope"] = terminal_slope(curve);
        } catch (const std::domain_error&) {
            r.json["terminal_slope"] = nullptr;
        }
    } catch (const EnsembleAnnihilated& e) {
        r.ok = false;
        r.message = e.what();
        r.json = table_json("curve", r.table);
    }
    return r;
}

std::vector<std::pair<double, double>> parse_settings(const std::string& text) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            throw UsageError("settings entries look like p1:p2, got '" + item + "'");
        }
        Config tmp;
        tmp.set("p1", item.substr(0, colon));
        tmp.set("p2", item.substr(colon + 1));
        out.emplace_back(tmp.require_double("p1"), tmp.require_double("p2"));
    }
    if (out.empty()) {
        throw UsageError("settings is empty");
    }
    return out;
}

CommandResult cmd_resources(Params& p) {
    const auto settings =
        parse_settings(p.text("settings", "0.9333:0.9466,0.9733:0.9786,0.9866:0.9833,0.9933:0.9946"));
    const bool both_labs = p.flag("both_labs", false);
    const FlaggedEnsembleState start = embed(BellDiagonalState::werner(p.real("initial.F", kProbeStartFidelity)));
    const double eps_min = p.real("eps_min", 1e-4);
    const std::size_t max_rounds = p.count("max_rounds", 10000);
    CommandResult r;
    r.table = CsvTable({"p1", "p2", "round", "eps", "N"});
    ordered_json curves = ordered_json::array();
    for (const auto& [p1, p2] : settings) {
        ordered_json c{{"p1", p1}, {"p2", p2}};
        try {
            const auto points = resource_curve(from_p1_p2(p1, p2, both_labs), start, eps_min, max_rounds);
            for (const ResourcePoint& pt : points) {
                r.table.row().cell(p1).cell(p2).cell(static_cast<std::uint64_t>(pt.round)).cell(pt.epsilon).cell(
                    pt.pairs);
            }
            try {
                const LogLogFit fit = fit_log_log(points, eps_min, 1e-1);
                c["fit"] = {{"slope", fit.slope},
                            {"intercept", fit.intercept},
                            {"r_squared", fit.r_squared},
                            {"points", fit.points}};
            } catch (const std::invalid_argument&) {
                c["fit"] = nullptr;
            }
            c["rounds"] = points.back().round;
            c["N"] = points.back().pairs;
        } catch (const ResourceUnreachable& e) {
            r.ok = false;
            r.message = e.what();
            c["error"] = e.what();
        }
        curves.push_back(c);
    }
    r.json = table_json("resources", r.table);
    r.json["curves"] = curves;
    return r;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw UsageError("cannot write '" + path.string() + "'");
    }
    out << content;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"iterate", "fixpoint", "critical", "scan", "mc", "curve", "resources"};
    return names;
}

std::string command_summary(const std::string& command) {
    static const std::map<std::string, std::string> summaries{
        {"iterate", "Recurrence trajectory: F, F_cond, keep probability and all 16 cells per step"},
        {"fixpoint", "Iterate to the fixpoint and classify the regime, optionally over a parameter sweep"},
        {"critical", "Bisect a noise family for the security threshold"},
        {"scan", "Regime frequencies for random noise at fixed identity weight f00"},
        {"mc", "Pair-level Monte Carlo of the distillation rounds"},
        {"curve", "Conditional-fidelity return map of the binary recurrence"},
        {"resources", "Pairs consumed per output pair against epsilon = 1 - F_cond"},
    };
    const auto it = summaries.find(command);
    if (it == summaries.end()) {
        throw UsageError("unknown subcommand '" + command + "'");
    }
    return it->second;
}

const std::vector<KeyHelp>& command_keys(const std::string& command) {
    static const std::vector<KeyHelp> noise_keys{
        {"model", "general", "noise model: general | white | p1p2 | binary"},
        {"f.<mu><nu>", "0", "general: weight of Pauli mu on the source and nu on the target, bits (phase, amplitude)"},
        {"normalization_tolerance", "1e-9", "accepted deviation of the weights' sum from 1"},
        {"f0", "", "white: one-qubit reliability; binary: uncorrelated flip reliability"},
        {"f00, f01, f10, f11", "", "binary: correlated flip weights"},
        {"p1, p2", "", "p1p2: one- and two-qubit depolarizing reliabilities"},
        {"both_labs", "false", "p1p2: noise in both labs (squares p1 and p2)"},
    };
    static const std::vector<KeyHelp> initial_keys{
        {"initial.F", "0.85", "Werner fidelity of the start state"},
        {"initial.A .. initial.D", "", "explicit Bell-diagonal start instead of initial.F"},
        {"initial.A0 .. initial.B1", "", "binary mode: explicit start"},
    };
    auto join = [](std::vector<KeyHelp> a, const std::vector<KeyHelp>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    static const std::map<std::string, std::vector<KeyHelp>> keys{
        {"iterate", join(join({{"mode", "flagged", "flagged | binary | ideal"}, {"steps", "20", "steps to take"}},
                              noise_keys),
                         initial_keys)},
        {"fixpoint",
         join(join({{"mode", "flagged", "flagged | binary | ideal"},
                    {"tol", "1e-12", "max-norm step change that counts as converged"},
                    {"max_iter", "100000", "iteration budget"},
                    {"sweep.key", "", "parameter to sweep, e.g. f0"},
                    {"sweep.from, sweep.to", "", "sweep range"},
                    {"sweep.points", "11", "sweep points"}},
                   noise_keys),
              initial_keys)},
        {"critical",
         {{"family", "binary", "binary | white"},
          {"lower, upper", "0.75, 0.85 (binary); 0.85, 0.95 (white)", "bracket"},
          {"halvings", "40", "bisection halvings (at least 40)"},
          {"threshold", "1e-9", "security means 1 - F_cond at or below this"},
          {"tol", "1e-12", "settling tolerance of a probe"},
          {"max_iter", "2000000 (binary); 200000 (white)", "probe budget"}}},
        {"scan",
         {{"scan.from, scan.to", "0.5, 1.0", "f00 range"},
          {"scan.points", "11", "grid points"},
          {"samples", "200", "noise draws per point"},
          {"seed", "1", "random seed"},
          {"threads", "1", "worker threads"},
          {"tol", "1e-12", "fixpoint tolerance"},
          {"max_iter", "100000", "iteration budget"}}},
        {"mc", join(join({{"n_pairs", "1000000", "initial pairs"},
                          {"rounds", "8", "rounds"},
                          {"seed", "1", "random seed"},
                          {"threads", "1", "worker threads"},
                          {"track_flags", "true", "record error flags"}},
                         noise_keys),
                    initial_keys)},
        {"curve", join({{"n_max", "8", "segments"},
                        {"segment_points", "64", "points per segment"},
                        {"seed.A0 .. seed.B1", "0.6, 0, 0.4, 0", "curve seed state"}},
                       noise_keys)},
        {"resources",
         {{"settings", "0.9333:0.9466,0.9733:0.9786,0.9866:0.9833,0.9933:0.9946", "comma-separated p1:p2 list"},
          {"both_labs", "false", "noise in both labs"},
          {"initial.F", "0.85", "Werner fidelity of the start state"},
          {"eps_min", "1e-4", "stop once 1 - F_cond is at or below this"},
          {"max_rounds", "10000", "round budget"}}},
    };
    const auto it = keys.find(command);
    if (it == keys.end()) {
        throw UsageError("unknown subcommand '" + command + "'");
    }
    return it->second;
}

CommandResult compute(const std::string& command, const Config& params) {
    Params p(params);
    CommandResult r;
    if (command == "iterate") {
        r = cmd_iterate(p);
    } else if (command == "fixpoint") {
        r = cmd_fixpoint(p);
    } else if (command == "critical") {
        r = cmd_critical(p);
    } else if (command == "scan") {
        r = cmd_scan(p);
    } else if (command == "mc") {
        r = cmd_mc(p);
    } else if (command == "curve") {
        r = cmd_curve(p);
    } else if (command == "resources") {
        r = cmd_resources(p);
    } else {
        throw UsageError("unknown subcommand '" + command + "'");
    }
    r.resolved = p.resolved();
    return r;
}

nlohmann::ordered_json manifest_json(const Invocation& invocation, const CommandResult& result,
                                     const std::vector<std::string>& outputs) {
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : result.resolved.entries()) {
        params[k] = v;
    }
    ordered_json seed = nullptr;
    if (const auto s = result.resolved.find("seed")) {
        seed = *s;
    }
    return {{"tool", "eppflags"},
            {"version", EPPFLAGS_VERSION},
            {"subcommand", invocation.command},
            {"format", invocation.format},
            {"seed", seed},
            {"parameters", params},
            {"outputs", outputs},
            {"ok", result.ok}};
}

Outcome execute(const Invocation& invocation) {
    if (invocation.format != "csv" && invocation.format != "json") {
        throw UsageError("format must be csv or json, got '" + invocation.format + "'");
    }
    CommandResult result;
    Outcome outcome;
    try {
        result = compute(invocation.command, invocation.params);
    } catch (const NoSignChange& e) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = e.what();
        return outcome;
    } catch (const ResourceUnreachable& e) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = e.what();
        return outcome;
    } catch (const EnsembleAnnihilated& e) {
        outcome.exit_code = kExitNotConverged;
        outcome.message = e.what();
        return outcome;
    } catch (const UsageError&) {
        throw;
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }

    const std::filesystem::path dir(invocation.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw UsageError("cannot create output directory '" + dir.string() + "': " + ec.message());
    }
    const std::string data_name = invocation.command + "." + invocation.format;
    const std::string manifest_name = invocation.command + ".manifest.json";
    if (invocation.format == "csv") {
        write_file(dir / data_name, result.table.str());
    } else {
        write_file(dir / data_name, result.json.dump(2) + "\n");
    }
    outcome.outputs = {(dir / data_name).string(), (dir / manifest_name).string()};
    write_file(dir / manifest_name, manifest_json(invocation, result, {data_name}).dump(2) + "\n");
    outcome.exit_code = result.ok ? kExitOk : kExitNotConverged;
    outcome.message = result.message;
    return outcome;
}

Config load_params(const std::string& path, const std::string& command, std::string* format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open config file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        try {
            return Config::parse(text);
        } catch (const ConfigError& e) {
            throw UsageError(path + ": " + e.what());
        }
    }
    ordered_json manifest;
    try {
        manifest = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path + ": not a valid manifest: " + e.what());
    }
    if (!manifest.contains("subcommand") || !manifest.contains("parameters")) {
        throw UsageError(path + ": manifest lacks subcommand or parameters");
    }
    const std::string recorded = manifest["subcommand"].get<std::string>();
    if (recorded != command) {
        throw UsageError(path + ": manifest is for '" + recorded + "', not '" + command + "'");
    }
    Config out;
    for (const auto& [k, v] : manifest["parameters"].items()) {
        out.set(k, v.get<std::string>());
    }
    if (format && manifest.contains("format")) {
        *format = manifest["format"].get<std::string>();
    }
    return out;
}

}  // namespace eppflags::cli
