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

// Reference data and brute-force checks shared by the unit tests and the
// acceptance report. Nothing here calls the code path it checks.

#ifndef EPPFLAGS_TESTS_SUPPORT_ORACLES_HPP
#define EPPFLAGS_TESTS_SUPPORT_ORACLES_HPP

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "eppflags/bellbits.hpp"
#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace eppflags::testing {

/// Flag-update table: entry [target flag code][source flag code], rows top
/// to bottom are the target's flag, columns left to right the source's.
extern const std::array<std::array<FlagPair, 4>, 4> kFlagUpdateTable;

/// Reference weights of the two white-noise examples, in noise_key order.
std::array<double, 16> printed_weights(double f00, double f0j, double fij);
/// Reference weights for p1 = 0.92, p2 = 0.9466, rounded (sum 1.000004).
std::array<double, 16> weights_p92();
/// Reference weights for p1 = 0.96, p2 = 0.968.
std::array<double, 16> weights_p96();
NoiseModel noise_p92();
NoiseModel noise_p96();

struct Mismatch {
    std::string what;
};

/// State-vector checks of epp_with_errors over all Bell inputs and errors,
/// and of error_corrector against all sixteen Alice-side Pauli candidates.
/// Returns one entry per disagreement.
std::vector<Mismatch> bit_algebra_mismatches(std::size_t* cases_checked = nullptr);

/// Exact comparison of the noiseless generator, summed over flags, against
/// the textbook noiseless recurrence.
std::vector<Mismatch> noiseless_recurrence_mismatches();

/// Exact comparison of the generator on binary support against the
/// closed-form binary recurrence, including its normalization.
std::vector<Mismatch> binary_recurrence_mismatches();

/// Table lookup mismatches of flag_update.
std::vector<Mismatch> flag_table_mismatches();

/// Iterates the binary recurrence written out independently here until the
/// max-norm change falls below `tolerance`.
std::array<double, 4> iterated_binary_fixpoint(double f0, double tolerance, std::size_t max_iterations = 10000000);

}  // namespace eppflags::testing

#endif  // EPPFLAGS_TESTS_SUPPORT_ORACLES_HPP
