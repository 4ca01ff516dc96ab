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

#ifndef EPPFLAGS_IO_HPP
#define EPPFLAGS_IO_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eppflags/dynamics.hpp"
#include "eppflags/montecarlo.hpp"
#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace eppflags {

nlohmann::ordered_json to_json(const BellDiagonalState& state);
nlohmann::ordered_json to_json(const FlaggedEnsembleState& state);
nlohmann::ordered_json to_json(const BinaryFlaggedState& state);
nlohmann::ordered_json to_json(const NoiseModel& noise);
nlohmann::ordered_json to_json(const RegimeReport& report);
nlohmann::ordered_json to_json(const CriticalResult& result);
nlohmann::ordered_json to_json(const RoundStats& stats);

template <typename State>
nlohmann::ordered_json to_json(const FixpointResult<State>& r) {
    nlohmann::ordered_json out;
    out["state"] = to_json(r.state);
    out["iterations"] = r.iterations;
    out["converged"] = r.converged;
    out["residual"] = r.residual;
    out["keep_probability"] = r.keep_probability;
    if (!r.failure.empty()) {
        out["failure"] = r.failure;
    }
    return out;
}

/// Comma-separated table with a fixed header. Numbers go through
/// format_double(), so output is locale-independent and round-trips.
class CsvTable {
   public:
    explicit CsvTable(std::vector<std::string> header);

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }

    /// Starts a new row; fill it with cell() calls.
    CsvTable& row();
    CsvTable& cell(const std::string& text);
    CsvTable& cell(double value);
    CsvTable& cell(std::uint64_t value);

    /// Throws std::logic_error if a row has the wrong number of cells.
    void write(std::ostream& os) const;
    std::string str() const;

    /// Rows as JSON objects keyed by header; numbers stay numbers.
    nlohmann::ordered_json to_json() const;

   private:
    struct Cell {
        std::string text;
        nlohmann::ordered_json value;
    };
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

}  // namespace eppflags

#endif  // EPPFLAGS_IO_HPP
