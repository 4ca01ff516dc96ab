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

#ifndef EPPFLAGS_MONTECARLO_HPP
#define EPPFLAGS_MONTECARLO_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "eppflags/bellbits.hpp"
#include "eppflags/config.hpp"
#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace eppflags {

/// One simulated pair: its physical Bell state and the demon's error flag.
struct McPair {
    BellIndex bell;
    FlagPair flag;

    friend bool operator==(const McPair&, const McPair&) = default;
};

struct McConfig {
    std::size_t n_pairs = 1000000;
    BellDiagonalState initial = BellDiagonalState::werner(0.85);
    NoiseModel noise;
    std::size_t rounds = 8;
    std::uint64_t seed = 1;
    /// With tracking off every flag stays (0,0); the random stream and the
    /// physical outcomes are unchanged.
    bool track_flags = true;
    /// Worker threads per round. Results do not depend on this.
    unsigned threads = 1;

    /// Throws std::invalid_argument.
    void validate() const;
};

/// Reads n_pairs, rounds, seed, track_flags, threads, the initial state
/// (initial.F for a Werner state, or initial.A .. initial.D) and the noise
/// keys understood by noise_from_config().
McConfig mc_config_from_config(const Config& config);

struct RoundStats {
    std::size_t round = 0;
    std::size_t pairs_remaining = 0;
    /// Fraction of pairs in Phi+.
    double f_hat = 0.0;
    /// Fraction of pairs whose flag equals their Bell index.
    double f_cond_hat = 0.0;
    /// Counts per flagged_index() cell.
    std::array<std::uint64_t, 16> cells{};
};

RoundStats collect_stats(std::size_t round, std::span<const McPair> pairs);

/// Pairs drawn independently from cfg.initial with zero flags. Independent
/// draws are already in random order.
std::vector<McPair> init_ensemble(const McConfig& cfg);

struct RoundOptions {
    bool track_flags = true;
    unsigned threads = 1;
};

/// One purification round: shuffle, split into (source, target) couples,
/// apply sampled noise and the protocol, keep sources whose target reads an
/// amplitude bit of 0. An odd leftover pair is appended unchanged. `round`
/// keys the random streams.
std::vector<McPair> distill_round(std::span<const McPair> pairs, const NoiseModel& noise, std::uint64_t seed,
                                  std::size_t round, const RoundOptions& options = {});

/// Initial stats, then one entry per round until cfg.rounds are done or
/// fewer than two pairs remain.
std::vector<RoundStats> run(const McConfig& cfg);

class ResourceUnreachable : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct ResourcePoint {
    std::size_t round = 0;
    /// 1 - F^cond after `round` rounds.
    double epsilon = 0.0;
    /// Initial pairs consumed per surviving pair, prod_n 2 / N_n.
    double pairs = 1.0;
};

/// Per-round (epsilon, N) along the analytic recurrence, stopping at the
/// first round with epsilon <= target_eps. Throws ResourceUnreachable if the
/// trajectory settles above the target or max_rounds pass.
std::vector<ResourcePoint> resource_curve(const NoiseModel& noise, const FlaggedEnsembleState& start,
                                          double target_eps, std::size_t max_rounds = 10000);

struct ResourceEstimate {
    /// Whole pairs needed, prod_n 2 / N_n rounded up.
    std::uint64_t pairs_required = 0;
    double pairs = 0.0;
    std::size_t rounds = 0;
    double epsilon = 0.0;
};

ResourceEstimate resources(const NoiseModel& noise, const FlaggedEnsembleState& start, double target_eps,
                           std::size_t max_rounds = 10000);
ResourceEstimate resources(const McConfig& cfg, double target_eps);

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t points = 0;
};

/// Least-squares line through (log epsilon, log N) for the points with
/// epsilon in [eps_min, eps_max]. Needs two distinct abscissae.
LogLogFit fit_log_log(std::span<const ResourcePoint> points, double eps_min, double eps_max);

}  // namespace eppflags

#endif  // EPPFLAGS_MONTECARLO_HPP
