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

#include "eppflags/noise.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace eppflags {

namespace {

void check_probability(double value, const char* what) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << what << " must lie in [0, 1], got " << value;
        throw InvalidNoiseModel(msg.str());
    }
}

// Clamps tiny negatives, rejects the rest and renormalizes in place.
template <std::size_t N>
void normalize(std::array<double, N>& f, double tolerance) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(f[i])) {
            throw InvalidNoiseModel("noise weight " + std::to_string(i) + " is not finite",
                                    static_cast<int>(i));
        }
        if (f[i] < 0.0) {
            if (f[i] < -kNegativeClamp) {
                std::ostringstream msg;
                msg << "noise weight " << i << " is negative (" << f[i] << ")";
                throw InvalidNoiseModel(msg.str(), static_cast<int>(i));
            }
            f[i] = 0.0;
        }
    }
    const double sum = std::accumulate(f.begin(), f.end(), 0.0);
    if (sum <= 0.0) {
        throw InvalidNoiseModel("noise weights sum to zero");
    }
    if (std::abs(sum - 1.0) > tolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "noise weights sum to " << sum << ", which is further than " << tolerance << " from 1";
        throw InvalidNoiseModel(msg.str());
    }
    for (double& w : f) {
        w /= sum;
    }
}

}  // namespace

InvalidNoiseModel::InvalidNoiseModel(const std::string& message, int entry)
    : std::invalid_argument(message), entry_(entry) {}

NoiseModel::NoiseModel() : f_{} { f_[0] = 1.0; }

NoiseModel NoiseModel::general(std::span<const double, 16> f, double normalization_tolerance) {
    NoiseModel out;
    std::copy(f.begin(), f.end(), out.f_.begin());
    normalize(out.f_, normalization_tolerance);
    return out;
}

PauliWeights NoiseModel::source_marginal() const {
    PauliWeights out{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            out[mu] += f_[4 * mu + nu];
        }
    }
    return out;
}

PauliWeights NoiseModel::target_marginal() const {
    PauliWeights out{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            out[nu] += f_[4 * mu + nu];
        }
    }
    return out;
}

PauliWeights one_qubit_white(double f0) {
    check_probability(f0, "f0");
    const double rest = (1.0 - f0) / 3.0;
    return {f0, rest, rest, rest};
}

PauliWeights one_qubit_depolarizing(double reliability) {
    check_probability(reliability, "one-qubit reliability");
    const double rest = (1.0 - reliability) / 4.0;
    return {reliability + rest, rest, rest, rest};
}

NoiseModel product(const PauliWeights& fa, const PauliWeights& fb) {
    PauliWeights a = fa;
    PauliWeights b = fb;
    normalize(a, kNormalizationTolerance);
    normalize(b, kNormalizationTolerance);
    std::array<double, 16> f{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            f[4 * mu + nu] = a[mu] * b[nu];
        }
    }
    return NoiseModel::general(f);
}

NoiseModel two_qubit_depolarizing(double reliability) {
    check_probability(reliability, "two-qubit reliability");
    std::array<double, 16> f;
    f.fill((1.0 - reliability) / 16.0);
    f[0] += reliability;
    return NoiseModel::general(f);
}

NoiseModel compose(const NoiseModel& first, const NoiseModel& second) {
    std::array<double, 16> f{};
    const auto& f1 = first.weights();
    const auto& f2 = second.weights();
    // Codes are (phase, amplitude) bit pairs, so a Pauli product is XOR on
    // each slot; XOR of the packed 4-bit index does both slots at once.
    for (int k1 = 0; k1 < 16; ++k1) {
        for (int k2 = 0; k2 < 16; ++k2) {
            f[k1 ^ k2] += f1[k1] * f2[k2];
        }
    }
    return NoiseModel::general(f);
}

NoiseModel from_p1_p2(double p1, double p2, bool both_labs) {
    check_probability(p1, "p1");
    check_probability(p2, "p2");
    if (both_labs) {
        p1 *= p1;
        p2 *= p2;
    }
    const PauliWeights single = one_qubit_depolarizing(p1);
    return compose(product(single, single), two_qubit_depolarizing(p2));
}

BinaryNoiseModel::BinaryNoiseModel(double f00, double f01, double f10, double f11,
                                   double normalization_tolerance) {
    std::array<double, 4> f{f00, f01, f10, f11};
    normalize(f, normalization_tolerance);
    f00_ = f[0];
    f01_ = f[1];
    f10_ = f[2];
    f11_ = f[3];
}

BinaryNoiseModel BinaryNoiseModel::uncorrelated(double f0) {
    check_probability(f0, "f0");
    const double f1 = 1.0 - f0;
    return BinaryNoiseModel(f0 * f0, f0 * f1, f1 * f0, f1 * f1);
}

BinaryNoiseModel BinaryNoiseModel::from_noise(const NoiseModel& noise, double tolerance) {
    for (PauliIndex mu : kAllPauliIndices) {
        for (PauliIndex nu : kAllPauliIndices) {
            const bool binary_support = mu.phase_flip() == 0 && nu.phase_flip() == 0;
            if (!binary_support && noise(mu, nu) > tolerance) {
                throw InvalidNoiseModel("noise has weight outside {Id, X}^2 at " + noise_key(mu, nu),
                                        4 * mu.code() + nu.code());
            }
        }
    }
    return BinaryNoiseModel(noise(kIdentity, kIdentity), noise(kIdentity, kSigmaX), noise(kSigmaX, kIdentity),
                            noise(kSigmaX, kSigmaX), tolerance + kNormalizationTolerance);
}

NoiseModel BinaryNoiseModel::embed() const {
    std::array<double, 16> f{};
    f[4 * kIdentity.code() + kIdentity.code()] = f00_;
    f[4 * kIdentity.code() + kSigmaX.code()] = f01_;
    f[4 * kSigmaX.code() + kIdentity.code()] = f10_;
    f[4 * kSigmaX.code() + kSigmaX.code()] = f11_;
    return NoiseModel::general(f);
}

std::string noise_key(PauliIndex source, PauliIndex target) {
    std::string key = "f.";
    key += static_cast<char>('0' + source.phase_flip());
    key += static_cast<char>('0' + source.amplitude_flip());
    key += static_cast<char>('0' + target.phase_flip());
    key += static_cast<char>('0' + target.amplitude_flip());
    return key;
}

NoiseModel noise_from_config(const Config& config) {
    const std::string model = config.get_string("model", "general");
    const double tolerance = config.get_double("normalization_tolerance", kNormalizationTolerance);
    if (model == "general") {
        std::array<double, 16> f{};
        bool any = false;
        for (PauliIndex mu : kAllPauliIndices) {
            for (PauliIndex nu : kAllPauliIndices) {
                const std::string key = noise_key(mu, nu);
                any = any || config.contains(key);
                f[4 * mu.code() + nu.code()] = config.get_double(key, 0.0);
            }
        }
        if (!any) {
            throw ConfigError("model = general needs at least one f.<mu><nu> key");
        }
        return NoiseModel::general(f, tolerance);
    }
    if (model == "white") {
        const PauliWeights w = one_qubit_white(config.require_double("f0"));
        return product(w, w);
    }
    if (model == "p1p2") {
        return from_p1_p2(config.require_double("p1"), config.require_double("p2"),
                          config.get_bool("both_labs", false));
    }
    if (model == "binary") {
        return binary_noise_from_config(config).embed();
    }
    throw ConfigError("unknown noise model '" + model + "' (expected general, white, binary or p1p2)");
}

BinaryNoiseModel binary_noise_from_config(const Config& config) {
    const std::string model = config.get_string("model", "binary");
    if (model == "binary") {
        if (config.contains("f00")) {
            return BinaryNoiseModel(config.require_double("f00"), config.get_double("f01", 0.0),
                                    config.get_double("f10", 0.0), config.get_double("f11", 0.0),
                                    config.get_double("normalization_tolerance", kNormalizationTolerance));
        }
        return BinaryNoiseModel::uncorrelated(config.require_double("f0"));
    }
    return BinaryNoiseModel::from_noise(noise_from_config(config));
}

void write_noise_config(const NoiseModel& noise, Config& config) {
    config.set("model", "general");
    for (PauliIndex mu : kAllPauliIndices) {
        for (PauliIndex nu : kAllPauliIndices) {
            config.set(noise_key(mu, nu), format_double(noise(mu, nu)));
        }
    }
}

}  // namespace eppflags
