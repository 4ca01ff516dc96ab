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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eppflags/montecarlo.hpp"
#include "eppflags/noise.hpp"
#include "oracles.hpp"

namespace eppflags {
namespace {

std::array<double, 16> random_simplex16(std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::array<double, 16> w{};
    double s = 0.0;
    for (double& x : w) {
        x = e(rng);
        s += x;
    }
    for (double& x : w) {
        x /= s;
    }
    return w;
}

McConfig small_config() {
    McConfig cfg;
    cfg.n_pairs = 20001;
    cfg.rounds = 4;
    cfg.seed = 99;
    cfg.noise = from_p1_p2(0.96, 0.968);
    return cfg;
}

TEST(MonteCarlo, SeededRunsRepeat) {
    const McConfig cfg = small_config();
    const auto a = run(cfg);
    const auto b = run(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].cells, b[i].cells);
    }
    McConfig other = cfg;
    other.seed = 100;
    EXPECT_NE(run(other).back().cells, a.back().cells);
}

TEST(MonteCarlo, ThreadCountDoesNotMatter) {
    McConfig cfg = small_config();
    cfg.n_pairs = 200001;
    const auto one = run(cfg);
    cfg.threads = 5;
    const auto five = run(cfg);
    ASSERT_EQ(one.size(), five.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        EXPECT_EQ(one[i].cells, five[i].cells) << "round " << i;
    }
}

TEST(MonteCarlo, FlagTrackingDoesNotChangePhysics) {
    McConfig cfg = small_config();
    const auto tracked = run(cfg);
    cfg.track_flags = false;
    const auto untracked = run(cfg);
    ASSERT_EQ(tracked.size(), untracked.size());
    for (std::size_t i = 0; i < tracked.size(); ++i) {
        EXPECT_EQ(tracked[i].pairs_remaining, untracked[i].pairs_remaining);
        EXPECT_EQ(tracked[i].f_hat, untracked[i].f_hat);
        for (int c = 0; c < 16; ++c) {
            if (c % 4 != 0) {
                EXPECT_EQ(untracked[i].cells[c], 0u);
            }
        }
    }
}

TEST(MonteCarlo, ZeroRoundsGivesInitialStatsOnly) {
    McConfig cfg = small_config();
    cfg.rounds = 0;
    const auto stats = run(cfg);
    ASSERT_EQ(stats.size(), 1u);
    EXPECT_EQ(stats[0].round, 0u);
    EXPECT_EQ(stats[0].pairs_remaining, cfg.n_pairs);
    EXPECT_EQ(stats[0].f_cond_hat, stats[0].f_hat);
}

TEST(MonteCarlo, NoiselessPureEnsembleHalves) {
    McConfig cfg;
    cfg.n_pairs = 1024;
    cfg.rounds = 5;
    cfg.initial = BellDiagonalState();
    const auto stats = run(cfg);
    for (std::size_t r = 0; r < stats.size(); ++r) {
        EXPECT_EQ(stats[r].pairs_remaining, 1024u >> r);
        EXPECT_EQ(stats[r].f_hat, 1.0);
    }
}

TEST(MonteCarlo, OddLeftoverIsKept) {
    std::vector<McPair> pairs(5, McPair{kPhiPlus, FlagPair{}});
    pairs[2] = {kPsiMinus, FlagPair{1, 1}};
    const auto out = distill_round(pairs, NoiseModel(), 3, 1);
    // Two couples and the leftover; a Psi- source with a Phi+ partner fails.
    EXPECT_GE(out.size(), 2u);
    EXPECT_LE(out.size(), 3u);
    EXPECT_THROW(distill_round(std::vector<McPair>(1), NoiseModel(), 3, 1), std::invalid_argument);
}

TEST(MonteCarlo, ConfigValidation) {
    McConfig cfg;
    cfg.n_pairs = 1;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg.n_pairs = 10;
    cfg.threads = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    const McConfig parsed = mc_config_from_config(
        Config::parse("model = p1p2\np1 = 0.96\np2 = 0.968\nn_pairs = 1000\nrounds = 3\nseed = 4\ninitial.F = 0.8\n"));
    EXPECT_EQ(parsed.n_pairs, 1000u);
    EXPECT_EQ(parsed.rounds, 3u);
    EXPECT_EQ(parsed.seed, 4u);
    EXPECT_NEAR(parsed.initial.A(), 0.8, 1e-15);
    EXPECT_EQ(parsed.noise, from_p1_p2(0.96, 0.968));
    EXPECT_EQ(mc_config_from_config(Config::parse("n_pairs = 10\n")).noise, NoiseModel());
}

// One round over 10^6 pairs against the analytic step on all 16 cells.
TEST(MonteCarlo, OneRoundMatchesRecurrence) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const NoiseModel noise = NoiseModel::general(random_simplex16(rng));
        const auto cell_weights = random_simplex16(rng);
        std::discrete_distribution<int> draw(cell_weights.begin(), cell_weights.end());
        std::vector<McPair> pairs(1000000);
        std::array<double, 16> counts{};
        for (McPair& p : pairs) {
            const int c = draw(rng);
            counts[c] += 1.0;
            p = {BellIndex::from_code(c / 4), FlagPair::from_code(c % 4)};
        }
        for (double& x : counts) {
            x /= static_cast<double>(pairs.size());
        }
        const auto expected = step(FlaggedEnsembleState::from_values(counts), generate_map(noise));
        const auto out = distill_round(pairs, noise, 17, 1, {true, 4});
        const RoundStats stats = collect_stats(1, out);
        const double n = static_cast<double>(out.size());
        const double couples = static_cast<double>(pairs.size() / 2);
        const double keep = n / couples;
        EXPECT_LE(std::abs(keep - expected.keep_probability),
                  4.0 * std::sqrt(expected.keep_probability * (1 - expected.keep_probability) / couples));
        for (int c = 0; c < 16; ++c) {
            const double p = expected.state[c];
            const double hat = static_cast<double>(stats.cells[c]) / n;
            EXPECT_LE(std::abs(hat - p), 4.0 * std::sqrt(p * (1 - p) / n) + 1e-12)
                << "trial " << trial << " cell " << cell_name(c);
        }
    }
}

TEST(MonteCarlo, FullRunTracksRecurrence) {
    McConfig cfg;
    cfg.noise = testing::noise_p96();
    const auto stats = run(cfg);
    ASSERT_EQ(stats.size(), 9u);
    const QuadraticMap map = generate_map(cfg.noise);
    FlaggedEnsembleState s = embed(cfg.initial);
    for (std::size_t r = 0; r < stats.size(); ++r) {
        if (r > 0) {
            s = step(s, map).state;
        }
        const double n = static_cast<double>(stats[r].pairs_remaining);
        const double p = conditional_fidelity(s);
        EXPECT_LE(std::abs(stats[r].f_cond_hat - p), 4.0 * std::sqrt(p * (1 - p) / n) + 1e-12) << r;
        const double q = fidelity(s);
        EXPECT_LE(std::abs(stats[r].f_hat - q), 4.0 * std::sqrt(q * (1 - q) / n) + 1e-12) << r;
    }
    EXPECT_GE(stats.back().f_cond_hat, 0.99);
}

TEST(Resources, SingleStep) {
    const NoiseModel noise = from_p1_p2(0.99, 0.99);
    const FlaggedEnsembleState start = embed(BellDiagonalState::werner(0.85));
    const auto one = step(start, generate_map(noise));
    const double eps1 = off_diagonal_mass(one.state);
    const ResourceEstimate r = resources(noise, start, eps1);
    EXPECT_EQ(r.rounds, 1u);
    EXPECT_EQ(r.pairs_required, static_cast<std::uint64_t>(std::ceil(2.0 / one.keep_probability)));
    EXPECT_DOUBLE_EQ(r.epsilon, eps1);
}

TEST(Resources, ConfigOverloadUsesInitialState) {
    const ResourceEstimate r = resources(NoiseModel(), embed(BellDiagonalState::werner(0.85)), 0.1);
    EXPECT_GE(r.rounds, 1u);
    McConfig cfg;
    const ResourceEstimate same = resources(cfg, 0.1);
    EXPECT_EQ(same.pairs_required, r.pairs_required);
}

TEST(Resources, UnreachableTargets) {
    const FlaggedEnsembleState start = embed(BellDiagonalState::werner(0.85));
    const PauliWeights w = one_qubit_white(0.85);
    EXPECT_THROW(resources(product(w, w), start, 1e-4), ResourceUnreachable);
    EXPECT_THROW(resources(from_p1_p2(0.99, 0.99), start, 1e-12, 2), ResourceUnreachable);
    EXPECT_THROW(resources(NoiseModel(), start, 0.0), std::invalid_argument);
}

TEST(Resources, CurvesAreMonotoneAndOrdered) {
    const FlaggedEnsembleState start = embed(BellDiagonalState::werner(0.85));
    double previous_pairs = INFINITY;
    for (const auto& [p1, p2] : {std::pair{0.9333, 0.9466}, {0.9733, 0.9786}, {0.9866, 0.9833}, {0.9933, 0.9946}}) {
        const auto curve = resource_curve(from_p1_p2(p1, p2), start, 1e-4);
        for (std::size_t i = 1; i < curve.size(); ++i) {
            EXPECT_GT(curve[i].pairs, curve[i - 1].pairs);
        }
        EXPECT_LE(curve.back().epsilon, 1e-4);
        EXPECT_LT(curve.back().pairs, previous_pairs);
        previous_pairs = curve.back().pairs;
    }
}

TEST(Resources, LogLogFit) {
    std::vector<ResourcePoint> pts;
    for (int i = 1; i <= 6; ++i) {
        const double eps = std::pow(10.0, -i * 0.5);
        pts.push_back({static_cast<std::size_t>(i), eps, 3.0 * std::pow(eps, -1.5)});
    }
    const LogLogFit f = fit_log_log(pts, 1e-4, 1e-1);
    EXPECT_NEAR(f.slope, -1.5, 1e-12);
    EXPECT_NEAR(f.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_THROW(fit_log_log(pts, 1e-9, 1e-8), std::invalid_argument);
}

}  // namespace
}  // namespace eppflags
