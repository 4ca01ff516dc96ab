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

#include "eppflags/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "eppflags/random.hpp"

namespace eppflags {

namespace {

constexpr std::uint64_t domain(RngDomain d) { return static_cast<std::uint64_t>(d); }

// Inverse-CDF sampler over a small discrete distribution.
template <std::size_t N>
class Discrete {
   public:
    explicit Discrete(const std::array<double, N>& weights) {
        double acc = 0.0;
        last_ = 0;
        for (std::size_t i = 0; i < N; ++i) {
            acc += weights[i];
            cdf_[i] = acc;
            if (weights[i] > 0.0) {
                last_ = i;
            }
        }
    }

    std::size_t operator()(double u) const {
        const double x = u * cdf_[N - 1];
        for (std::size_t i = 0; i < last_; ++i) {
            if (x < cdf_[i]) {
                return i;
            }
        }
        return last_;
    }

   private:
    std::array<double, N> cdf_{};
    std::size_t last_;
};

// Runs fn(begin, end) over [0, n) in `threads` contiguous chunks.
void parallel_chunks(std::size_t n, unsigned threads, const std::function<void(std::size_t, std::size_t)>& fn) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, n / 4096 + 1));
    if (workers == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        pool.emplace_back(fn, begin, std::min(n, begin + chunk));
    }
    for (auto& t : pool) {
        t.join();
    }
}

}  // namespace

void McConfig::validate() const {
    if (n_pairs < 2) {
        throw std::invalid_argument("Monte Carlo needs at least 2 pairs");
    }
    if (threads == 0) {
        throw std::invalid_argument("threads must be positive");
    }
}

McConfig mc_config_from_config(const Config& config) {
    McConfig cfg;
    cfg.n_pairs = config.get_uint("n_pairs", cfg.n_pairs);
    cfg.rounds = config.get_uint("rounds", cfg.rounds);
    cfg.seed = config.get_uint("seed", cfg.seed);
    cfg.track_flags = config.get_bool("track_flags", cfg.track_flags);
    cfg.threads = static_cast<unsigned>(config.get_uint("threads", cfg.threads));
    if (config.contains("initial.A")) {
        cfg.initial = BellDiagonalState::from_letters(config.require_double("initial.A"),
                                                      config.get_double("initial.B", 0.0),
                                                      config.get_double("initial.C", 0.0),
                                                      config.get_double("initial.D", 0.0));
    } else {
        cfg.initial = BellDiagonalState::werner(config.get_double("initial.F", 0.85));
    }
    const std::string model = config.get_string("model", "general");
    const bool any_noise = model != "general" || std::any_of(config.entries().begin(), config.entries().end(),
                                                             [](const auto& kv) { return kv.first.rfind("f.", 0) == 0; });
    cfg.noise = any_noise ? noise_from_config(config) : NoiseModel();
    cfg.validate();
    return cfg;
}

RoundStats collect_stats(std::size_t round, std::span<const McPair> pairs) {
    RoundStats out;
    out.round = round;
    out.pairs_remaining = pairs.size();
    std::uint64_t phi_plus = 0;
    std::uint64_t matched = 0;
    for (const McPair& p : pairs) {
        ++out.cells[flagged_index(p.bell, p.flag)];
        phi_plus += p.bell == kPhiPlus ? 1 : 0;
        matched += p.flag.code() == p.bell.code() ? 1 : 0;
    }
    if (!pairs.empty()) {
        const double n = static_cast<double>(pairs.size());
        out.f_hat = static_cast<double>(phi_plus) / n;
        out.f_cond_hat = static_cast<double>(matched) / n;
    }
    return out;
}

std::vector<McPair> init_ensemble(const McConfig& cfg) {
    cfg.validate();
    const Discrete<4> bell(cfg.initial.coeffs());
    std::vector<McPair> pairs(cfg.n_pairs);
    parallel_chunks(cfg.n_pairs, cfg.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            KeyedRng rng{cfg.seed, domain(RngDomain::kInitialEnsemble), i};
            pairs[i] = {BellIndex::from_code(static_cast<int>(bell(rng.uniform()))), FlagPair{}};
        }
    });
    return pairs;
}

std::vector<McPair> distill_round(std::span<const McPair> input, const NoiseModel& noise, std::uint64_t seed,
                                  std::size_t round, const RoundOptions& options) {
    if (input.size() < 2) {
        throw std::invalid_argument("a round needs at least 2 pairs");
    }
    if (options.threads == 0) {
        throw std::invalid_argument("threads must be positive");
    }
    std::vector<McPair> pairs(input.begin(), input.end());
    KeyedRng shuffle_rng{seed, domain(RngDomain::kPairing), round};
    for (std::size_t i = pairs.size() - 1; i > 0; --i) {
        std::swap(pairs[i], pairs[shuffle_rng.below(i + 1)]);
    }

    const Discrete<16> error(noise.weights());
    const std::size_t couples = pairs.size() / 2;
    std::vector<McPair> survivor(couples);
    std::vector<std::uint8_t> kept(couples, 0);
    parallel_chunks(couples, options.threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const McPair& src = pairs[2 * c];
            const McPair& tgt = pairs[2 * c + 1];
            KeyedRng rng{seed, domain(RngDomain::kNoise), round, c};
            const std::size_t k = error(rng.uniform());
            const PauliIndex mu = PauliIndex::from_code(static_cast<int>(k / 4));
            const PauliIndex nu = PauliIndex::from_code(static_cast<int>(k % 4));
            const BellPair out = epp_with_errors(src.bell, tgt.bell, mu, nu);
            if (!keep_predicate(out.target)) {
                continue;
            }
            kept[c] = 1;
            survivor[c].bell = out.source;
            survivor[c].flag = options.track_flags
                                   ? flag_update(flag_flip(src.flag, mu), flag_flip(tgt.flag, nu))
                                   : FlagPair{};
        }
    });

    std::vector<McPair> out;
    out.reserve(couples + 1);
    for (std::size_t c = 0; c < couples; ++c) {
        if (kept[c]) {
            out.push_back(survivor[c]);
        }
    }
    if (pairs.size() % 2 == 1) {
        out.push_back(pairs.back());
    }
    return out;
}

std::vector<RoundStats> run(const McConfig& cfg) {
    std::vector<McPair> pairs = init_ensemble(cfg);
    std::vector<RoundStats> stats{collect_stats(0, pairs)};
    const RoundOptions options{cfg.track_flags, cfg.threads};
    for (std::size_t r = 1; r <= cfg.rounds && pairs.size() >= 2; ++r) {
        pairs = distill_round(pairs, cfg.noise, cfg.seed, r, options);
        stats.push_back(collect_stats(r, pairs));
    }
    return stats;
}

std::vector<ResourcePoint> resource_curve(const NoiseModel& noise, const FlaggedEnsembleState& start,
                                          double target_eps, std::size_t max_rounds) {
    if (!(target_eps > 0.0 && target_eps < 1.0)) {
        throw std::invalid_argument("target epsilon must lie in (0, 1)");
    }
    const QuadraticMap map = generate_map(noise);
    std::vector<ResourcePoint> out{{0, off_diagonal_mass(start), 1.0}};
    FlaggedEnsembleState s = start;
    while (out.back().epsilon > target_eps) {
        const std::size_t round = out.back().round + 1;
        if (round > max_rounds) {
            std::ostringstream msg;
            msg << "epsilon " << target_eps << " not reached within " << max_rounds << " rounds";
            throw ResourceUnreachable(msg.str());
        }
        const auto next = step(s, map);
        double change = 0.0;
        for (int i = 0; i < 16; ++i) {
            change = std::max(change, std::abs(next.state[i] - s[i]));
        }
        s = next.state;
        out.push_back({round, off_diagonal_mass(s), out.back().pairs * 2.0 / next.keep_probability});
        if (change <= 1e-16 && out.back().epsilon > target_eps) {
            std::ostringstream msg;
            msg << "trajectory settles at epsilon " << out.back().epsilon << ", above the target " << target_eps;
            throw ResourceUnreachable(msg.str());
        }
    }
    return out;
}

ResourceEstimate resources(const NoiseModel& noise, const FlaggedEnsembleState& start, double target_eps,
                           std::size_t max_rounds) {
    const ResourcePoint last = resource_curve(noise, start, target_eps, max_rounds).back();
    ResourceEstimate out;
    out.pairs = last.pairs;
    // Absorb rounding in the product so exact integers do not round up.
    out.pairs_required = static_cast<std::uint64_t>(std::ceil(last.pairs * (1.0 - 1e-12)));
    out.rounds = last.round;
    out.epsilon = last.epsilon;
    return out;
}

ResourceEstimate resources(const McConfig& cfg, double target_eps) {
    return resources(cfg.noise, embed(cfg.initial), target_eps);
}

LogLogFit fit_log_log(std::span<const ResourcePoint> points, double eps_min, double eps_max) {
    double n = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (const ResourcePoint& p : points) {
        if (p.epsilon < eps_min || p.epsilon > eps_max) {
            continue;
        }
        const double x = std::log(p.epsilon);
        const double y = std::log(p.pairs);
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    const double vx = n * sxx - sx * sx;
    if (n < 2.0 || !(vx > 0.0)) {
        throw std::invalid_argument("log-log fit needs two distinct epsilon values in range");
    }
    LogLogFit out;
    out.points = static_cast<std::size_t>(n);
    out.slope = (n * sxy - sx * sy) / vx;
    out.intercept = (sy - out.slope * sx) / n;
    const double vy = n * syy - sy * sy;
    const double cov = n * sxy - sx * sy;
    out.r_squared = vy > 0.0 ? cov * cov / (vx * vy) : 1.0;
    return out;
}

}  // namespace eppflags
