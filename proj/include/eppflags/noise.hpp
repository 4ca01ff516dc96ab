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

#ifndef EPPFLAGS_NOISE_HPP
#define EPPFLAGS_NOISE_HPP

#include <array>
#include <span>
#include <stdexcept>
#include <string>

#include "eppflags/bellbits.hpp"
#include "eppflags/config.hpp"

/// Pauli-diagonal noise on the two qubits Alice's CNOT acts on.
///
/// Weights are indexed by PauliIndex::code() (Id = 0, X = 1, Z = 2, Y = 3).
/// Two-qubit weights use index 4 * source.code() + target.code().
namespace eppflags {

/// Normalization slack accepted silently by the constructors.
inline constexpr double kNormalizationTolerance = 1e-9;
/// Negative entries above this are clamped to zero.
inline constexpr double kNegativeClamp = 1e-15;

class InvalidNoiseModel : public std::invalid_argument {
   public:
    InvalidNoiseModel(const std::string& message, int entry = -1);
    /// Offending entry index, or -1 when the problem is global.
    int entry() const { return entry_; }

   private:
    int entry_;
};

using PauliWeights = std::array<double, 4>;

class NoiseModel {
   public:
    /// Identity channel.
    NoiseModel();

    /// Validates, clamps tiny negatives and renormalizes. Sums further than
    /// `normalization_tolerance` from 1 are rejected.
    static NoiseModel general(std::span<const double, 16> f,
                              double normalization_tolerance = kNormalizationTolerance);

    double operator()(PauliIndex source, PauliIndex target) const {
        return f_[4 * source.code() + target.code()];
    }
    const std::array<double, 16>& weights() const { return f_; }

    PauliWeights source_marginal() const;
    PauliWeights target_marginal() const;

    friend bool operator==(const NoiseModel&, const NoiseModel&) = default;

   private:
    std::array<double, 16> f_;
};

/// (f0, (1-f0)/3, (1-f0)/3, (1-f0)/3).
PauliWeights one_qubit_white(double f0);

/// One-qubit depolarizing channel p rho + (1-p) Id/2 as Pauli weights.
PauliWeights one_qubit_depolarizing(double reliability);

/// f(mu, nu) = fa[mu] * fb[nu].
NoiseModel product(const PauliWeights& fa, const PauliWeights& fb);

/// Two-qubit depolarizing channel p rho + (1-p) Id/4.
NoiseModel two_qubit_depolarizing(double reliability);

/// Pauli-channel convolution: products of Paulis multiply bitwise.
NoiseModel compose(const NoiseModel& first, const NoiseModel& second);

/// One-qubit depolarizing (p1) on both qubits followed by two-qubit
/// depolarizing (p2). With `both_labs`, p1 and p2 describe identical noise
/// in Alice's and Bob's laboratories; for Bell-diagonal ensembles this is
/// equivalent to Alice-only noise with reliabilities p1^2 and p2^2.
NoiseModel from_p1_p2(double p1, double p2, bool both_labs = false);

/// Correlated spin-flip channel on {Id, X}^2. f01 is X on the target only,
/// f10 X on the source only.
class BinaryNoiseModel {
   public:
    BinaryNoiseModel(double f00, double f01, double f10, double f11,
                     double normalization_tolerance = kNormalizationTolerance);

    /// f_{mu nu} = f_mu f_nu with f_0 = f0, f_1 = 1 - f0.
    static BinaryNoiseModel uncorrelated(double f0);

    /// Inverse of embed(); rejects models with weight outside {Id, X}^2.
    static BinaryNoiseModel from_noise(const NoiseModel& noise, double tolerance = 1e-12);

    double f00() const { return f00_; }
    double f01() const { return f01_; }
    double f10() const { return f10_; }
    double f11() const { return f11_; }
    double f_s() const { return f01_ + f10_; }

    NoiseModel embed() const;

   private:
    double f00_;
    double f01_;
    double f10_;
    double f11_;
};

/// Key-value form: `model = general|white|binary|p1p2`, with `f.<mu><nu>`
/// keys (mu, nu in 00, 01, 10, 11 as phase/amplitude bits), `f0`, `p1`, `p2`,
/// `both_labs`, or `f00, f01, f10, f11` for the binary model.
/// `normalization_tolerance` overrides the default slack.
NoiseModel noise_from_config(const Config& config);
BinaryNoiseModel binary_noise_from_config(const Config& config);

/// Writes `model = general` and all sixteen `f.<mu><nu>` keys.
void write_noise_config(const NoiseModel& noise, Config& config);

/// "f.0110" style key for a (source, target) Pauli pair.
std::string noise_key(PauliIndex source, PauliIndex target);

}  // namespace eppflags

#endif  // EPPFLAGS_NOISE_HPP
