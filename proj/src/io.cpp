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

#include "eppflags/io.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eppflags {

using nlohmann::ordered_json;

ordered_json to_json(const BellDiagonalState& state) {
    return {{"A", state.A()}, {"B", state.B()}, {"C", state.C()}, {"D", state.D()}};
}

ordered_json to_json(const FlaggedEnsembleState& state) {
    ordered_json out;
    for (int i = 0; i < 16; ++i) {
        out[cell_name(i)] = state[i];
    }
    return out;
}

ordered_json to_json(const BinaryFlaggedState& state) {
    return {{"A0", state.a0()}, {"A1", state.a1()}, {"B0", state.b0()}, {"B1", state.b1()}};
}

ordered_json to_json(const NoiseModel& noise) {
    ordered_json out;
    for (PauliIndex mu : kAllPauliIndices) {
        for (PauliIndex nu : kAllPauliIndices) {
            out[noise_key(mu, nu)] = noise(mu, nu);
        }
    }
    return out;
}

ordered_json to_json(const RegimeReport& report) {
    ordered_json out{{"regime", to_string(report.regime)},
                     {"F", report.fidelity},
                     {"F_cond", report.conditional_fidelity},
                     {"iterations", report.iterations},
                     {"converged", report.converged}};
    if (!report.warning.empty()) {
        out["warning"] = report.warning;
    }
    return out;
}

ordered_json to_json(const CriticalResult& result) {
    return {{"critical", result.critical},
            {"bracket_achieved", {result.lower, result.upper}},
            {"width", result.upper - result.lower},
            {"halvings", result.halvings}};
}

ordered_json to_json(const RoundStats& stats) {
    ordered_json cells;
    for (int i = 0; i < 16; ++i) {
        cells[cell_name(i)] = stats.cells[i];
    }
    return {{"round", stats.round},
            {"remaining", stats.pairs_remaining},
            {"F_hat", stats.f_hat},
            {"F_cond_hat", stats.f_cond_hat},
            {"cells", cells}};
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row() {
    rows_.emplace_back();
    return *this;
}

CsvTable& CsvTable::cell(const std::string& text) {
    if (rows_.empty()) {
        throw std::logic_error("cell() before row()");
    }
    rows_.back().push_back({text, text});
    return *this;
}

CsvTable& CsvTable::cell(double value) {
    if (rows_.empty()) {
        throw std::logic_error("cell() before row()");
    }
    const std::string text = format_double(value);
    rows_.back().push_back({text, std::isfinite(value) ? ordered_json(value) : ordered_json(text)});
    return *this;
}

CsvTable& CsvTable::cell(std::uint64_t value) {
    if (rows_.empty()) {
        throw std::logic_error("cell() before row()");
    }
    rows_.back().push_back({std::to_string(value), value});
    return *this;
}

void CsvTable::write(std::ostream& os) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        os << (i ? "," : "") << header_[i];
    }
    os << '\n';
    for (const auto& r : rows_) {
        if (r.size() != header_.size()) {
            throw std::logic_error("CSV row has " + std::to_string(r.size()) + " cells, header has " +
                                   std::to_string(header_.size()));
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
            os << (i ? "," : "") << r[i].text;
        }
        os << '\n';
    }
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

ordered_json CsvTable::to_json() const {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows_) {
        ordered_json obj;
        for (std::size_t i = 0; i < header_.size() && i < r.size(); ++i) {
            obj[header_[i]] = r[i].value;
        }
        out.push_back(std::move(obj));
    }
    return out;
}

}  // namespace eppflags
