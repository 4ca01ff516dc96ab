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

#ifndef EPPFLAGS_DYNAMICS_HPP
#define EPPFLAGS_DYNAMICS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace eppflags {

struct IterationOptions {
    /// Max-norm change of one step that counts as converged.
    double tolerance = 1e-12;
    std::size_t max_iterations = 100000;
};

template <typename State>
struct FixpointResult {
    State state;
    std::size_t iterations = 0;
    bool converged = false;
    /// Max-norm of the last step's change.
    double residual = 0.0;
    /// Keep probability of the last step.
    double keep_probability = 0.0;
    /// Why iteration stopped without converging; empty otherwise.
    std::string failure;
};

FixpointResult<FlaggedEnsembleState> iterate_to_fixpoint(const FlaggedEnsembleState& start, const QuadraticMap& map,
                                                         const IterationOptions& options = {});
FixpointResult<BinaryFlaggedState> iterate_to_fixpoint(const BinaryFlaggedState& start, const BinaryNoiseModel& noise,
                                                       const IterationOptions& options = {});
/// Noiseless recurrence.
FixpointResult<BellDiagonalState> iterate_to_fixpoint(const BellDiagonalState& start,
                                                      const IterationOptions& options = {});

/// Closed-form fixpoint of the binary recurrence under uncorrelated noise
/// with single-qubit reliability f0. Throws std::domain_error for f0 outside
/// [3/4, 1].
BinaryFlaggedState binary_fixpoint_analytic(double f0);

/// d a'_j / d a_k of the normalized map a -> (a^T M_j a) / sum_l a^T M_l a.
/// The matrices must be symmetric.
template <int Dim>
Eigen::Matrix<double, Dim, Dim> normalized_quadratic_jacobian(
    const std::array<Eigen::Matrix<double, Dim, Dim>, Dim>& forms, const Eigen::Matrix<double, Dim, 1>& a) {
    using Matrix = Eigen::Matrix<double, Dim, Dim>;
    using Vector = Eigen::Matrix<double, Dim, 1>;
    Matrix total = Matrix::Zero();
    Vector image;
    for (int j = 0; j < Dim; ++j) {
        total += forms[j];
        image(j) = a.dot(forms[j] * a);
    }
    const double keep = image.sum();
    if (!(keep > kAnnihilationThreshold)) {
        throw EnsembleAnnihilated(keep);
    }
    const Vector keep_gradient = 2.0 * total * a;
    Matrix out;
    for (int j = 0; j < Dim; ++j) {
        const Vector gradient = 2.0 * forms[j] * a;
        out.row(j) = ((gradient - (image(j) / keep) * keep_gradient) / keep).transpose();
    }
    return out;
}

Matrix16 jacobian(const QuadraticMap& map, const Vector16& a);
Matrix16 jacobian(const QuadraticMap& map, const FlaggedEnsembleState& state);
Eigen::Matrix4d jacobian(const BinaryNoiseModel& noise, const Eigen::Vector4d& a);
Eigen::Matrix4d jacobian(const BinaryNoiseModel& noise, const BinaryFlaggedState& state);

/// Largest eigenvalue modulus. Throws std::runtime_error if the eigensolver
/// fails.
double spectral_radius(const Eigen::MatrixXd& m);

enum class Regime { kHighNoise, kIntermediate, kSecurity };

std::string to_string(Regime regime);

/// F at or below 0.5 + this margin counts as no purification.
inline constexpr double kHighNoiseMargin = 1e-6;
/// Security needs conditional fidelity within this of 1.
inline constexpr double kSecurityGap = 1e-6;

struct RegimeReport {
    Regime regime = Regime::kIntermediate;
    double fidelity = 0.0;
    double conditional_fidelity = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    /// Set when the regime is a fallback for non-convergence.
    std::string warning;
};

/// Standard probe start: Werner state with fidelity 0.85, flags zero.
inline constexpr double kProbeStartFidelity = 0.85;

/// Regime of an already computed trajectory end point.
RegimeReport regime_of(const FixpointResult<FlaggedEnsembleState>& result);
RegimeReport regime_of(const FixpointResult<BinaryFlaggedState>& result);

RegimeReport classify_regime(const NoiseModel& noise, const FlaggedEnsembleState& start,
                             const IterationOptions& options = {});
RegimeReport classify_regime(const NoiseModel& noise, const IterationOptions& options = {});
RegimeReport classify_regime(const BinaryNoiseModel& noise, const BinaryFlaggedState& start,
                             const IterationOptions& options = {});

struct ProbeOptions {
    /// Security means off-diagonal mass (1 - F_cond) at or below this.
    double threshold = 1e-9;
    double tolerance = 1e-12;
    std::size_t max_iterations = 2000000;
};

/// Dynamical security indicator: does the conditional fidelity reach
/// 1 - threshold? Stops early once the off-diagonal mass is below the
/// threshold and still shrinking, or once the trajectory has settled
/// (contraction-corrected residual below tolerance). Budget exhaustion and
/// annihilation count as insecure.
bool reaches_security(const QuadraticMap& map, const FlaggedEnsembleState& start, const ProbeOptions& options = {});
bool reaches_security(const BinaryNoiseModel& noise, const BinaryFlaggedState& start,
                      const ProbeOptions& options = {});

enum class NoiseFamily {
    /// Binary pairs under uncorrelated spin flips, parameter f0.
    kBinaryUncorrelated,
    /// Full ensemble under one-qubit white noise on both qubits, parameter f0.
    kWhiteNoise,
};

NoiseFamily parse_noise_family(const std::string& name);
std::string to_string(NoiseFamily family);
ProbeOptions default_probe_options(NoiseFamily family);

class NoSignChange : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct CriticalResult {
    double critical = 0.0;
    /// Final bracket: lower is insecure, upper is secure (or the reverse when
    /// security decreases with the parameter).
    double lower = 0.0;
    double upper = 0.0;
    std::size_t halvings = 0;
};

struct CriticalOptions {
    std::size_t halvings = 40;
    ProbeOptions probe;
};

/// Bisection on a boolean indicator whose value differs at the bracket ends.
CriticalResult find_critical(const std::function<bool(double)>& indicator, double lower, double upper,
                             std::size_t halvings = 40);
/// Bisection on reaches_security over a family of noise models, starting from
/// the standard Werner probe state.
CriticalResult find_critical(const std::function<NoiseModel(double)>& family, double lower, double upper,
                             const CriticalOptions& options);
CriticalResult find_critical(NoiseFamily family, double lower, double upper, const CriticalOptions& options);
CriticalResult find_critical(NoiseFamily family, double lower, double upper);

struct RegimeHistogram {
    std::size_t high_noise = 0;
    std::size_t intermediate = 0;
    std::size_t security = 0;
    std::size_t warnings = 0;

    std::size_t total() const { return high_noise + intermediate + security; }
    double fraction(Regime regime) const;
};

/// Noise with fixed identity weight f00 and the other fifteen weights drawn
/// uniformly from the simplex of mass 1 - f00. Sample k depends only on
/// (seed, k), so scans over f00 share their random directions.
NoiseModel random_noise_with_identity_weight(double f00, std::uint64_t seed, std::uint64_t sample);

RegimeHistogram regime_scan(double f00, std::size_t samples, std::uint64_t seed,
                            const IterationOptions& options = {}, unsigned threads = 1);

struct CurvePoint {
    std::size_t segment = 0;
    /// Interpolation parameter between the seed state and its image.
    double t = 0.0;
    double f_cond = 0.0;
    double f_cond_next = 0.0;
};

/// Default seed of the purification curve, (A0, A1, B0, B1) = (0.6, 0, 0.4, 0).
BinaryFlaggedState default_curve_seed();

/// Conditional-fidelity return map of the binary recurrence: the segment
/// between `seed` and its image is pushed through the n-th iterate for
/// n = 0 .. n_max - 1, and (F_cond, next F_cond) is recorded for each of the
/// `segment_points` samples per segment.
std::vector<CurvePoint> purification_curve(const BinaryNoiseModel& noise, std::size_t n_max,
                                           std::size_t segment_points,
                                           const BinaryFlaggedState& seed = default_curve_seed());

/// Least-squares slope of F^cond_{n+1} against F^cond_n over the points of
/// the last segment: the slope of the return map where the curve ends.
double terminal_slope(const std::vector<CurvePoint>& curve);

struct IntermediateFit {
    double offset = 0.0;
    double scale = 0.0;
    double onset = 0.0;
    double residual_sum_squares = 0.0;
};

/// Least-squares fit of y = offset + scale * sqrt(x - onset) with onset below
/// every sample. Needs at least five points.
IntermediateFit fit_intermediate(std::span<const std::pair<double, double>> points);

}  // namespace eppflags

#endif  // EPPFLAGS_DYNAMICS_HPP
