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

#include "eppflags/recurrence.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace eppflags {

namespace {

template <std::size_t N>
std::array<double, N> validated(std::array<double, N> values, double tolerance, const char* what) {
    for (std::size_t i = 0; i < N; ++i) {
        if (!std::isfinite(values[i])) {
            throw InvalidState(std::string(what) + ": entry " + std::to_string(i) + " is not finite");
        }
        if (values[i] < 0.0) {
            if (values[i] < -tolerance) {
                std::ostringstream msg;
                msg << what << ": entry " << i << " is negative (" << values[i] << ")";
                throw InvalidState(msg.str());
            }
            values[i] = 0.0;
        }
    }
    const double sum = std::accumulate(values.begin(), values.end(), 0.0);
    if (std::abs(sum - 1.0) > tolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": weights sum to " << sum << ", expected 1";
        throw InvalidState(msg.str());
    }
    for (double& v : values) {
        v /= sum;
    }
    return values;
}

void check_keep(double keep_probability) {
    if (!(keep_probability > kAnnihilationThreshold)) {
        throw EnsembleAnnihilated(keep_probability);
    }
}

// Adds c * x_i * x_k to a symmetric quadratic form.
void add_monomial(Eigen::Matrix4d& m, int i, int k, double c) {
    if (i == k) {
        m(i, i) += c;
    } else {
        m(i, k) += c / 2.0;
        m(k, i) += c / 2.0;
    }
}

}  // namespace

EnsembleAnnihilated::EnsembleAnnihilated(double keep_probability)
    : std::runtime_error("ensemble annihilated: keep probability " + std::to_string(keep_probability)),
      keep_probability_(keep_probability) {}

BellDiagonalState::BellDiagonalState() : coeffs_{1.0, 0.0, 0.0, 0.0} {}

BellDiagonalState BellDiagonalState::from_codes(const std::array<double, 4>& by_code, double tolerance) {
    BellDiagonalState out;
    out.coeffs_ = validated(by_code, tolerance, "Bell-diagonal state");
    return out;
}

BellDiagonalState BellDiagonalState::from_letters(double a, double b, double c, double d, double tolerance) {
    std::array<double, 4> by_code{};
    by_code[kPhiPlus.code()] = a;
    by_code[kPsiMinus.code()] = b;
    by_code[kPsiPlus.code()] = c;
    by_code[kPhiMinus.code()] = d;
    return from_codes(by_code, tolerance);
}

BellDiagonalState BellDiagonalState::werner(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw InvalidState("Werner fidelity must lie in [0, 1]");
    }
    const double rest = (1.0 - fidelity) / 3.0;
    return from_letters(fidelity, rest, rest, rest);
}

std::string cell_name(int index) {
    if (index < 0 || index >= 16) {
        throw std::out_of_range("cell index must lie in [0, 16)");
    }
    const BellIndex b = BellIndex::from_code(index / 4);
    const FlagPair f = FlagPair::from_code(index % 4);
    std::string out(1, letter(b));
    out += static_cast<char>('0' + f.phase_error());
    out += static_cast<char>('0' + f.amplitude_error());
    return out;
}

FlaggedEnsembleState::FlaggedEnsembleState() : values_{} { values_[flagged_index(kPhiPlus, FlagPair{})] = 1.0; }

FlaggedEnsembleState FlaggedEnsembleState::from_values(const std::array<double, 16>& values, double tolerance) {
    FlaggedEnsembleState out;
    out.values_ = validated(values, tolerance, "flagged ensemble state");
    return out;
}

FlaggedEnsembleState FlaggedEnsembleState::from_vector(const Vector16& values, double tolerance) {
    std::array<double, 16> raw;
    Eigen::Map<Vector16>(raw.data()) = values;
    return from_values(raw, tolerance);
}

BinaryFlaggedState::BinaryFlaggedState() : v_{1.0, 0.0, 0.0, 0.0} {}

BinaryFlaggedState::BinaryFlaggedState(double a0, double a1, double b0, double b1, double tolerance)
    : v_(validated(std::array<double, 4>{a0, a1, b0, b1}, tolerance, "binary state")) {}

BinaryFlaggedState BinaryFlaggedState::with_fidelity(double fidelity) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
        throw InvalidState("fidelity must lie in [0, 1]");
    }
    return {fidelity, 0.0, 1.0 - fidelity, 0.0};
}

QuadraticMap::QuadraticMap(const std::array<Matrix16, 16>& matrices)
    : total_(Matrix16::Zero()), stacked_(256, 16) {
    for (int j = 0; j < 16; ++j) {
        m_[j] = (matrices[j] + matrices[j].transpose()) / 2.0;
        total_ += m_[j];
        stacked_.middleRows(16 * j, 16) = m_[j];
    }
}

Vector16 QuadraticMap::evaluate(const Vector16& a) const {
    const Eigen::VectorXd products = stacked_ * a;
    // Column j of the reshaped products is M_j a.
    return Eigen::Map<const Matrix16>(products.data()).transpose() * a;
}

QuadraticMap generate_map(const NoiseModel& noise) {
    const RoutedTerms<double> routed = route_terms(noise.weights());
    std::array<Matrix16, 16> matrices;
    for (int j = 0; j < 16; ++j) {
        for (int k = 0; k < 16; ++k) {
            for (int l = 0; l < 16; ++l) {
                matrices[j](k, l) = routed.at(j, k, l);
            }
        }
    }
    return QuadraticMap(matrices);
}

StepResult<FlaggedEnsembleState> step(const FlaggedEnsembleState& state, const QuadraticMap& map) {
    const Vector16 image = map.evaluate(state.vector());
    const double keep = image.sum();
    check_keep(keep);
    return {FlaggedEnsembleState::from_vector(image / keep), keep};
}

StepResult<BellDiagonalState> ideal_step(const BellDiagonalState& s) {
    const double a = s.A();
    const double b = s.B();
    const double c = s.C();
    const double d = s.D();
    const double keep = (a + b) * (a + b) + (c + d) * (c + d);
    check_keep(keep);
    return {BellDiagonalState::from_letters((a * a + b * b) / keep, 2.0 * c * d / keep, (c * c + d * d) / keep,
                                            2.0 * a * b / keep),
            keep};
}

StepResult<BinaryFlaggedState> binary_step(const BinaryFlaggedState& s, const BinaryNoiseModel& n) {
    const double a0 = s.a0();
    const double a1 = s.a1();
    const double b0 = s.b0();
    const double b1 = s.b1();
    const double f00 = n.f00();
    const double f11 = n.f11();
    const double fs = n.f_s();

    const double a0_next = f00 * (a0 * a0 + 2.0 * a0 * a1) + f11 * (b1 * b1 + 2.0 * b0 * b1) +
                           fs * (a0 * b1 + a1 * b1 + a0 * b0);
    const double a1_next = f00 * a1 * a1 + f11 * b0 * b0 + fs * a1 * b0;
    const double b0_next = f00 * (b0 * b0 + 2.0 * b0 * b1) + f11 * (a1 * a1 + 2.0 * a0 * a1) +
                           fs * (b0 * a1 + b1 * a1 + b0 * a0);
    const double b1_next = f00 * b1 * b1 + f11 * a0 * a0 + fs * b1 * a0;
    const double a = a0 + a1;
    const double b = b0 + b1;
    const double keep = (f00 + f11) * (a * a + b * b) + 2.0 * fs * a * b;
    check_keep(keep);
    return {BinaryFlaggedState(a0_next / keep, a1_next / keep, b0_next / keep, b1_next / keep), keep};
}

std::array<Eigen::Matrix4d, 4> binary_quadratic_forms(const BinaryNoiseModel& n) {
    constexpr int kA0 = 0;
    constexpr int kA1 = 1;
    constexpr int kB0 = 2;
    constexpr int kB1 = 3;
    const double f00 = n.f00();
    const double f11 = n.f11();
    const double fs = n.f_s();
    std::array<Eigen::Matrix4d, 4> m;
    for (auto& mat : m) {
        mat.setZero();
    }

    add_monomial(m[kA0], kA0, kA0, f00);
    add_monomial(m[kA0], kA0, kA1, 2.0 * f00);
    add_monomial(m[kA0], kB1, kB1, f11);
    add_monomial(m[kA0], kB0, kB1, 2.0 * f11);
    add_monomial(m[kA0], kA0, kB1, fs);
    add_monomial(m[kA0], kA1, kB1, fs);
    add_monomial(m[kA0], kA0, kB0, fs);

    add_monomial(m[kA1], kA1, kA1, f00);
    add_monomial(m[kA1], kB0, kB0, f11);
    add_monomial(m[kA1], kA1, kB0, fs);

    add_monomial(m[kB0], kB0, kB0, f00);
    add_monomial(m[kB0], kB0, kB1, 2.0 * f00);
    add_monomial(m[kB0], kA1, kA1, f11);
    add_monomial(m[kB0], kA0, kA1, 2.0 * f11);
    add_monomial(m[kB0], kB0, kA1, fs);
    add_monomial(m[kB0], kB1, kA1, fs);
    add_monomial(m[kB0], kB0, kA0, fs);

    add_monomial(m[kB1], kB1, kB1, f00);
    add_monomial(m[kB1], kA0, kA0, f11);
    add_monomial(m[kB1], kB1, kA0, fs);
    return m;
}

double fidelity(const BellDiagonalState& state) { return state.A(); }

double fidelity(const FlaggedEnsembleState& state) {
    double out = 0.0;
    for (FlagPair f : kAllFlags) {
        out += state(kPhiPlus, f);
    }
    return out;
}

double fidelity(const BinaryFlaggedState& state) { return state.a0() + state.a1(); }

double conditional_fidelity(const FlaggedEnsembleState& state) {
    double out = 0.0;
    for (BellIndex b : kAllBellIndices) {
        out += state(b, FlagPair::from_code(b.code()));
    }
    return out;
}

double conditional_fidelity(const BinaryFlaggedState& state) { return state.a0() + state.b1(); }

double off_diagonal_mass(const FlaggedEnsembleState& state) {
    double out = 0.0;
    for (BellIndex b : kAllBellIndices) {
        for (FlagPair f : kAllFlags) {
            if (f.code() != b.code()) {
                out += state(b, f);
            }
        }
    }
    return out;
}

double off_diagonal_mass(const BinaryFlaggedState& state) { return state.a1() + state.b0(); }

FlaggedEnsembleState embed(const BellDiagonalState& state) {
    std::array<double, 16> values{};
    for (BellIndex b : kAllBellIndices) {
        values[flagged_index(b, FlagPair{})] = state[b];
    }
    return FlaggedEnsembleState::from_values(values);
}

FlaggedEnsembleState embed(const BinaryFlaggedState& state) {
    std::array<double, 16> values{};
    values[flagged_index(kPhiPlus, FlagPair{0, 0})] = state.a0();
    values[flagged_index(kPhiPlus, FlagPair{0, 1})] = state.a1();
    values[flagged_index(kPsiPlus, FlagPair{0, 0})] = state.b0();
    values[flagged_index(kPsiPlus, FlagPair{0, 1})] = state.b1();
    return FlaggedEnsembleState::from_values(values);
}

BellDiagonalState marginal(const FlaggedEnsembleState& state) {
    std::array<double, 4> by_code{};
    for (BellIndex b : kAllBellIndices) {
        for (FlagPair f : kAllFlags) {
            by_code[b.code()] += state(b, f);
        }
    }
    return BellDiagonalState::from_codes(by_code);
}

BinaryFlaggedState restrict_to_binary(const FlaggedEnsembleState& state, double tolerance) {
    double outside = 0.0;
    for (BellIndex b : kAllBellIndices) {
        for (FlagPair f : kAllFlags) {
            const bool inside = b.phase() == 0 && f.phase_error() == 0;
            if (!inside) {
                outside += state(b, f);
            }
        }
    }
    if (outside > tolerance) {
        std::ostringstream msg;
        msg << "state has mass " << outside << " outside the binary-pair family";
        throw InvalidState(msg.str());
    }
    return {state(kPhiPlus, FlagPair{0, 0}), state(kPhiPlus, FlagPair{0, 1}), state(kPsiPlus, FlagPair{0, 0}),
            state(kPsiPlus, FlagPair{0, 1}), tolerance + kStateTolerance};
}

}  // namespace eppflags
