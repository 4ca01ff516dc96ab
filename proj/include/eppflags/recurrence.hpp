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

#ifndef EPPFLAGS_RECURRENCE_HPP
#define EPPFLAGS_RECURRENCE_HPP

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eppflags/bellbits.hpp"
#include "eppflags/noise.hpp"

namespace eppflags {

using Vector16 = Eigen::Matrix<double, 16, 1>;
using Matrix16 = Eigen::Matrix<double, 16, 16>;

/// Ensemble-state normalization slack.
inline constexpr double kStateTolerance = 1e-10;
/// Keep probabilities at or below this annihilate the ensemble.
inline constexpr double kAnnihilationThreshold = 1e-15;

class InvalidState : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class EnsembleAnnihilated : public std::runtime_error {
   public:
    explicit EnsembleAnnihilated(double keep_probability);
    double keep_probability() const { return keep_probability_; }

   private:
    double keep_probability_;
};

/// A Phi+ + B Psi- + C Psi+ + D Phi-.
class BellDiagonalState {
   public:
    /// Pure Phi+.
    BellDiagonalState();

    /// Weights indexed by BellIndex::code(); validated and renormalized.
    static BellDiagonalState from_codes(const std::array<double, 4>& by_code,
                                        double tolerance = kStateTolerance);
    static BellDiagonalState from_letters(double a, double b, double c, double d,
                                          double tolerance = kStateTolerance);
    /// Fidelity F on Phi+, (1-F)/3 on each other Bell state.
    static BellDiagonalState werner(double fidelity);

    double operator[](BellIndex b) const { return coeffs_[b.code()]; }
    double A() const { return coeffs_[kPhiPlus.code()]; }
    double B() const { return coeffs_[kPsiMinus.code()]; }
    double C() const { return coeffs_[kPsiPlus.code()]; }
    double D() const { return coeffs_[kPhiMinus.code()]; }
    const std::array<double, 4>& coeffs() const { return coeffs_; }

   private:
    std::array<double, 4> coeffs_;
};

/// Position of (Bell state, flag) in the 16-component ensemble vector.
constexpr int flagged_index(BellIndex b, FlagPair f) { return 4 * b.code() + f.code(); }

/// Cell name such as "A00" or "D10": letter of the Bell state, then flag bits.
std::string cell_name(int index);

/// Weights A^(ij) ... D^(ij) over (Bell state, error flag).
class FlaggedEnsembleState {
   public:
    /// Pure Phi+ with flag (0,0).
    FlaggedEnsembleState();

    /// Values indexed by flagged_index(); validated and renormalized.
    static FlaggedEnsembleState from_values(const std::array<double, 16>& values,
                                            double tolerance = kStateTolerance);
    static FlaggedEnsembleState from_vector(const Vector16& values, double tolerance = kStateTolerance);

    double operator()(BellIndex b, FlagPair f) const { return values_[flagged_index(b, f)]; }
    double operator[](int index) const { return values_.at(index); }
    const std::array<double, 16>& values() const { return values_; }
    Vector16 vector() const { return Eigen::Map<const Vector16>(values_.data()); }

   private:
    std::array<double, 16> values_;
};

/// Binary-pair ensemble: A_g on Phi+ and B_g on Psi+ (the amplitude-flipped
/// partner), each with a single flag bit g.
class BinaryFlaggedState {
   public:
    BinaryFlaggedState();
    BinaryFlaggedState(double a0, double a1, double b0, double b1, double tolerance = kStateTolerance);
    /// Fidelity F with flag 0: (F, 0, 1-F, 0).
    static BinaryFlaggedState with_fidelity(double fidelity);

    double a0() const { return v_[0]; }
    double a1() const { return v_[1]; }
    double b0() const { return v_[2]; }
    double b1() const { return v_[3]; }
    /// (A0, A1, B0, B1).
    const std::array<double, 4>& values() const { return v_; }
    Eigen::Vector4d vector() const { return Eigen::Map<const Eigen::Vector4d>(v_.data()); }

   private:
    std::array<double, 4> v_;
};

/// Sixteen symmetric matrices M_j with a'_j = a^T M_j a / N.
class QuadraticMap {
   public:
    /// Symmetrizes each input matrix.
    explicit QuadraticMap(const std::array<Matrix16, 16>& matrices);

    const Matrix16& operator[](int j) const { return m_.at(j); }
    const std::array<Matrix16, 16>& matrices() const { return m_; }
    /// Sum of all M_j: a^T total() a is the keep probability.
    const Matrix16& total() const { return total_; }

    /// Unnormalized image (a^T M_j a)_j.
    Vector16 evaluate(const Vector16& a) const;

   private:
    std::array<Matrix16, 16> m_;
    Matrix16 total_;
    // Row 16 * j + k holds row k of M_j.
    Eigen::MatrixXd stacked_;
};

/// Flat [j][k][l] tensor of routed weights: input cells k (source) and l
/// (target) contribute to output cell j.
template <typename Weight>
class RoutedTerms {
   public:
    RoutedTerms() : data_(16 * 16 * 16) {}
    Weight& at(int j, int k, int l) { return data_[(j * 16 + k) * 16 + l]; }
    const Weight& at(int j, int k, int l) const { return data_[(j * 16 + k) * 16 + l]; }

   private:
    std::vector<Weight> data_;
};

/// Enumerates every (source cell, target cell, error pair) and routes its
/// noise weight to the output cell of the kept source. `f` is indexed like
/// NoiseModel::weights(). The weight type only needs `+=`, so exact and
/// symbolic scalars work as well as double.
template <typename Weight>
RoutedTerms<Weight> route_terms(const std::array<Weight, 16>& f) {
    RoutedTerms<Weight> out;
    for (BellIndex s : kAllBellIndices) {
        for (FlagPair g : kAllFlags) {
            for (BellIndex t : kAllBellIndices) {
                for (FlagPair h : kAllFlags) {
                    for (PauliIndex mu : kAllPauliIndices) {
                        for (PauliIndex nu : kAllPauliIndices) {
                            const BellPair physical = epp_with_errors(s, t, mu, nu);
                            if (!keep_predicate(physical.target)) {
                                continue;
                            }
                            const FlagPair flag = flag_update(flag_flip(g, mu), flag_flip(h, nu));
                            out.at(flagged_index(physical.source, flag), flagged_index(s, g), flagged_index(t, h)) +=
                                f[4 * mu.code() + nu.code()];
                        }
                    }
                }
            }
        }
    }
    return out;
}

QuadraticMap generate_map(const NoiseModel& noise);

template <typename State>
struct StepResult {
    State state;
    double keep_probability;
};

/// One noisy purification step of the flagged ensemble.
StepResult<FlaggedEnsembleState> step(const FlaggedEnsembleState& state, const QuadraticMap& map);

/// Noiseless recurrence on a Bell-diagonal state.
StepResult<BellDiagonalState> ideal_step(const BellDiagonalState& state);

/// Closed-form binary-pair recurrence.
StepResult<BinaryFlaggedState> binary_step(const BinaryFlaggedState& state, const BinaryNoiseModel& noise);

/// Coefficients of the binary recurrence as symmetric quadratic forms over
/// (A0, A1, B0, B1).
std::array<Eigen::Matrix4d, 4> binary_quadratic_forms(const BinaryNoiseModel& noise);

double fidelity(const BellDiagonalState& state);
double fidelity(const FlaggedEnsembleState& state);
double fidelity(const BinaryFlaggedState& state);

/// Mass where the flag equals the Bell index.
double conditional_fidelity(const FlaggedEnsembleState& state);
double conditional_fidelity(const BinaryFlaggedState& state);

/// Mass where the flag differs from the Bell index (1 - conditional fidelity,
/// computed without cancellation).
double off_diagonal_mass(const FlaggedEnsembleState& state);
double off_diagonal_mass(const BinaryFlaggedState& state);

/// All mass at flag (0,0).
FlaggedEnsembleState embed(const BellDiagonalState& state);
FlaggedEnsembleState embed(const BinaryFlaggedState& state);
BellDiagonalState marginal(const FlaggedEnsembleState& state);

/// Inverse of embed(BinaryFlaggedState); rejects states with mass outside
/// {Phi+, Psi+} x {(0,0), (0,1)}.
BinaryFlaggedState restrict_to_binary(const FlaggedEnsembleState& state, double tolerance = kStateTolerance);

}  // namespace eppflags

#endif  // EPPFLAGS_RECURRENCE_HPP
