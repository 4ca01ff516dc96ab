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

#include "eppflags/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include <Eigen/Eigenvalues>

#include "eppflags/random.hpp"

namespace eppflags {

namespace {

void check_options(const IterationOptions& o) {
    if (!(o.tolerance > 0.0) || !std::isfinite(o.tolerance)) {
        throw std::invalid_argument("iteration tolerance must be positive and finite");
    }
    if (o.max_iterations == 0) {
        throw std::invalid_argument("iteration budget must be positive");
    }
}

const std::array<double, 4>& values_of(const BellDiagonalState& s) { return s.coeffs(); }
const std::array<double, 16>& values_of(const FlaggedEnsembleState& s) { return s.values(); }
const std::array<double, 4>& values_of(const BinaryFlaggedState& s) { return s.values(); }

template <typename State>
double max_change(const State& a, const State& b) {
    const auto& x = values_of(a);
    const auto& y = values_of(b);
    double out = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        out = std::max(out, std::abs(x[i] - y[i]));
    }
    return out;
}

template <typename State, typename Step>
FixpointResult<State> iterate(const State& start, const Step& step_once, const IterationOptions& options) {
    check_options(options);
    FixpointResult<State> r;
    r.state = start;
    for (std::size_t n = 0; n < options.max_iterations; ++n) {
        try {
            auto next = step_once(r.state);
            r.residual = max_change(next.state, r.state);
            r.state = next.state;
            r.keep_probability = next.keep_probability;
        } catch (const EnsembleAnnihilated& e) {
            r.failure = e.what();
            return r;
        }
        r.iterations = n + 1;
        if (r.residual <= options.tolerance) {
            r.converged = true;
            return r;
        }
    }
    std::ostringstream msg;
    msg << "no convergence within " << options.max_iterations << " iterations (last change " << r.residual << ")";
    r.failure = msg.str();
    return r;
}

// Off-diagonal mass trajectory x_n. Decides security from it; see
// reaches_security() for the rules.
template <typename State, typename Step>
bool probe(const State& start, const Step& step_once, const ProbeOptions& options) {
    State s = start;
    double x = off_diagonal_mass(s);
    double previous_change = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < options.max_iterations; ++n) {
        State next;
        try {
            next = step_once(s).state;
        } catch (const EnsembleAnnihilated&) {
            return false;
        }
        const double x_next = off_diagonal_mass(next);
        if (x_next <= options.threshold && x_next <= x) {
            return true;
        }
        const double change = max_change(next, s);
        // A plain step-size test stops too early under critical slowing down;
        // divide by the observed contraction gap first.
        const double ratio = change / previous_change;
        if (ratio < 1.0 && change / (1.0 - ratio) <= options.tolerance) {
            return x_next <= options.threshold;
        }
        previous_change = change;
        s = next;
        x = x_next;
    }
    return false;
}

template <typename Report, typename Result>
Report report_from(const Result& r) {
    Report out;
    out.fidelity = fidelity(r.state);
    out.conditional_fidelity = conditional_fidelity(r.state);
    out.iterations = r.iterations;
    out.converged = r.converged;
    if (!r.converged) {
        out.regime = Regime::kIntermediate;
        out.warning = r.failure;
    } else if (out.fidelity <= 0.5 + kHighNoiseMargin) {
        out.regime = Regime::kHighNoise;
    } else if (out.conditional_fidelity >= 1.0 - kSecurityGap) {
        out.regime = Regime::kSecurity;
    } else {
        out.regime = Regime::kIntermediate;
    }
    return out;
}

NoiseModel white_noise(double f0) {
    const PauliWeights w = one_qubit_white(f0);
    return product(w, w);
}

FlaggedEnsembleState probe_start() { return embed(BellDiagonalState::werner(kProbeStartFidelity)); }

}  // namespace

FixpointResult<FlaggedEnsembleState> iterate_to_fixpoint(const FlaggedEnsembleState& start, const QuadraticMap& map,
                                                         const IterationOptions& options) {
    return iterate(start, [&](const FlaggedEnsembleState& s) { return step(s, map); }, options);
}

FixpointResult<BinaryFlaggedState> iterate_to_fixpoint(const BinaryFlaggedState& start, const BinaryNoiseModel& noise,
                                                       const IterationOptions& options) {
    return iterate(start, [&](const BinaryFlaggedState& s) { return binary_step(s, noise); }, options);
}

FixpointResult<BellDiagonalState> iterate_to_fixpoint(const BellDiagonalState& start,
                                                      const IterationOptions& options) {
    return iterate(start, [](const BellDiagonalState& s) { return ideal_step(s); }, options);
}

BinaryFlaggedState binary_fixpoint_analytic(double f0) {
    if (!(f0 >= 0.75 && f0 <= 1.0)) {
        throw std::domain_error("binary fixpoint needs 3/4 <= f0 <= 1");
    }
    const double u = 2.0 * f0 - 1.0;
    const double a0 = (4.0 * f0 * f0 - 4.0 * f0 + u * std::sqrt(4.0 * f0 - 3.0) + 1.0) / (2.0 * u * u);
    return {a0, 0.0, 0.0, 1.0 - a0};
}

Matrix16 jacobian(const QuadraticMap& map, const Vector16& a) {
    return normalized_quadratic_jacobian<16>(map.matrices(), a);
}

Matrix16 jacobian(const QuadraticMap& map, const FlaggedEnsembleState& state) {
    return jacobian(map, state.vector());
}

Eigen::Matrix4d jacobian(const BinaryNoiseModel& noise, const Eigen::Vector4d& a) {
    return normalized_quadratic_jacobian<4>(binary_quadratic_forms(noise), a);
}

Eigen::Matrix4d jacobian(const BinaryNoiseModel& noise, const BinaryFlaggedState& state) {
    return jacobian(noise, state.vector());
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw std::invalid_argument("spectral radius needs a non-empty square matrix");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("spectral radius needs finite entries");
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigensolver did not converge");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::kHighNoise:
            return "high_noise";
        case Regime::kIntermediate:
            return "intermediate";
        case Regime::kSecurity:
            return "security";
    }
    return "unknown";
}

RegimeReport regime_of(const FixpointResult<FlaggedEnsembleState>& result) {
    return report_from<RegimeReport>(result);
}

RegimeReport regime_of(const FixpointResult<BinaryFlaggedState>& result) { return report_from<RegimeReport>(result); }

RegimeReport classify_regime(const NoiseModel& noise, const FlaggedEnsembleState& start,
                             const IterationOptions& options) {
    return report_from<RegimeReport>(iterate_to_fixpoint(start, generate_map(noise), options));
}

RegimeReport classify_regime(const NoiseModel& noise, const IterationOptions& options) {
    return classify_regime(noise, probe_start(), options);
}

RegimeReport classify_regime(const BinaryNoiseModel& noise, const BinaryFlaggedState& start,
                             const IterationOptions& options) {
    return report_from<RegimeReport>(iterate_to_fixpoint(start, noise, options));
}

bool reaches_security(const QuadraticMap& map, const FlaggedEnsembleState& start, const ProbeOptions& options) {
    return probe(start, [&](const FlaggedEnsembleState& s) { return step(s, map); }, options);
}

bool reaches_security(const BinaryNoiseModel& noise, const BinaryFlaggedState& start, const ProbeOptions& options) {
    return probe(start, [&](const BinaryFlaggedState& s) { return binary_step(s, noise); }, options);
}

NoiseFamily parse_noise_family(const std::string& name) {
    if (name == "binary") {
        return NoiseFamily::kBinaryUncorrelated;
    }
    if (name == "white") {
        return NoiseFamily::kWhiteNoise;
    }
    throw std::invalid_argument("unknown noise family '" + name + "' (expected binary or white)");
}

std::string to_string(NoiseFamily family) {
    return family == NoiseFamily::kBinaryUncorrelated ? "binary" : "white";
}

ProbeOptions default_probe_options(NoiseFamily family) {
    ProbeOptions out;
    // A 16-cell step costs about fifty binary steps.
    out.max_iterations = family == NoiseFamily::kBinaryUncorrelated ? 2000000 : 200000;
    return out;
}

CriticalResult find_critical(const std::function<bool(double)>& indicator, double lower, double upper,
                             std::size_t halvings) {
    if (!(lower < upper)) {
        throw std::invalid_argument("bracket must satisfy lower < upper");
    }
    const bool at_lower = indicator(lower);
    const bool at_upper = indicator(upper);
    if (at_lower == at_upper) {
        std::ostringstream msg;
        msg << "indicator does not change across [" << lower << ", " << upper << "]";
        throw NoSignChange(msg.str());
    }
    double lo = lower;
    double hi = upper;
    std::size_t done = 0;
    for (; done < halvings; ++done) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (indicator(mid) == at_lower ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), lo, hi, done};
}

CriticalResult find_critical(const std::function<NoiseModel(double)>& family, double lower, double upper,
                             const CriticalOptions& options) {
    const FlaggedEnsembleState start = probe_start();
    return find_critical(
        [&](double x) { return reaches_security(generate_map(family(x)), start, options.probe); }, lower, upper,
        options.halvings);
}

CriticalResult find_critical(NoiseFamily family, double lower, double upper, const CriticalOptions& options) {
    if (family == NoiseFamily::kWhiteNoise) {
        return find_critical(std::function<NoiseModel(double)>(white_noise), lower, upper, options);
    }
    const BinaryFlaggedState start = BinaryFlaggedState::with_fidelity(kProbeStartFidelity);
    return find_critical(
        [&](double f0) { return reaches_security(BinaryNoiseModel::uncorrelated(f0), start, options.probe); },
        lower, upper, options.halvings);
}

CriticalResult find_critical(NoiseFamily family, double lower, double upper) {
    CriticalOptions options;
    options.probe = default_probe_options(family);
    return find_critical(family, lower, upper, options);
}

double RegimeHistogram::fraction(Regime regime) const {
    const std::size_t n = total();
    if (n == 0) {
        return 0.0;
    }
    std::size_t count = 0;
    switch (regime) {
        case Regime::kHighNoise:
            count = high_noise;
            break;
        case Regime::kIntermediate:
            count = intermediate;
            break;
        case Regime::kSecurity:
            count = security;
            break;
    }
    return static_cast<double>(count) / static_cast<double>(n);
}

NoiseModel random_noise_with_identity_weight(double f00, std::uint64_t seed, std::uint64_t sample) {
    if (!(f00 >= 0.0 && f00 <= 1.0)) {
        throw std::invalid_argument("f00 must lie in [0, 1]");
    }
    KeyedRng rng{seed, static_cast<std::uint64_t>(RngDomain::kRegimeScan), sample};
    std::array<double, 16> f{};
    double sum = 0.0;
    for (int k = 1; k < 16; ++k) {
        f[k] = -std::log(rng.uniform_open());
        sum += f[k];
    }
    f[0] = f00;
    for (int k = 1; k < 16; ++k) {
        f[k] *= (1.0 - f00) / sum;
    }
    return NoiseModel::general(f);
}

RegimeHistogram regime_scan(double f00, std::size_t samples, std::uint64_t seed, const IterationOptions& options,
                            unsigned threads) {
    std::vector<RegimeReport> reports(samples);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            reports[k] = classify_regime(random_noise_with_identity_weight(f00, seed, k), options);
        }
    };
    random_noise_with_identity_weight(f00, seed, 0);  // validates f00 before spawning
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, samples));
    if (workers == 1) {
        work(0, samples);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (samples + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = std::min(samples, w * chunk);
            const std::size_t end = std::min(samples, begin + chunk);
            pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    RegimeHistogram out;
    for (const RegimeReport& r : reports) {
        switch (r.regime) {
            case Regime::kHighNoise:
                ++out.high_noise;
                break;
            case Regime::kIntermediate:
                ++out.intermediate;
                break;
            case Regime::kSecurity:
                ++out.security;
                break;
        }
        out.warnings += r.warning.empty() ? 0 : 1;
    }
    return out;
}

BinaryFlaggedState default_curve_seed() { return {0.6, 0.0, 0.4, 0.0}; }

std::vector<CurvePoint> purification_curve(const BinaryNoiseModel& noise, std::size_t n_max,
                                           std::size_t segment_points, const BinaryFlaggedState& seed) {
    if (segment_points == 0) {
        throw std::invalid_argument("segment_points must be positive");
    }
    const Eigen::Vector4d s0 = seed.vector();
    const Eigen::Vector4d s1 = binary_step(seed, noise).state.vector();
    std::vector<BinaryFlaggedState> current;
    current.reserve(segment_points);
    for (std::size_t k = 0; k < segment_points; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(segment_points);
        const Eigen::Vector4d x = (1.0 - t) * s0 + t * s1;
        current.emplace_back(x(0), x(1), x(2), x(3));
    }
    std::vector<CurvePoint> out;
    out.reserve(n_max * segment_points);
    for (std::size_t n = 0; n < n_max; ++n) {
        for (std::size_t k = 0; k < segment_points; ++k) {
            const BinaryFlaggedState next = binary_step(current[k], noise).state;
            out.push_back({n, static_cast<double>(k) / static_cast<double>(segment_points),
                           conditional_fidelity(current[k]), conditional_fidelity(next)});
            current[k] = next;
        }
    }
    return out;
}

double terminal_slope(const std::vector<CurvePoint>& curve) {
    if (curve.empty()) {
        throw std::invalid_argument("empty curve");
    }
    const std::size_t last = curve.back().segment;
    // Work with the off-diagonal masses 1 - F^cond to keep precision near 1.
    double n = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const CurvePoint& p : curve) {
        if (p.segment != last) {
            continue;
        }
        const double x = 1.0 - p.f_cond;
        const double y = 1.0 - p.f_cond_next;
        n += 1.0;
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double det = n * sxx - sx * sx;
    if (!(det > 0.0)) {
        throw std::domain_error("last segment is degenerate");
    }
    return (n * sxy - sx * sy) / det;
}

namespace {

struct LinearFit {
    double offset;
    double scale;
    double rss;
};

LinearFit fit_at_onset(std::span<const std::pair<double, double>> points, double onset) {
    double n = 0.0;
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [x, y] : points) {
        const double s = std::sqrt(x - onset);
        n += 1.0;
        sx += s;
        sy += y;
        sxx += s * s;
        sxy += s * y;
    }
    const double det = n * sxx - sx * sx;
    if (!(std::abs(det) > 1e-300)) {
        throw std::domain_error("degenerate fit");
    }
    LinearFit out{};
    out.scale = (n * sxy - sx * sy) / det;
    out.offset = (sy - out.scale * sx) / n;
    out.rss = 0.0;
    for (const auto& [x, y] : points) {
        const double r = out.offset + out.scale * std::sqrt(x - onset) - y;
        out.rss += r * r;
    }
    return out;
}

}  // namespace

IntermediateFit fit_intermediate(std::span<const std::pair<double, double>> points) {
    if (points.size() < 5) {
        throw std::invalid_argument("fit_intermediate needs at least 5 points");
    }
    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    for (const auto& [x, y] : points) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
            throw std::invalid_argument("fit points must be finite");
        }
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
    }
    const double range = x_max - x_min;
    if (!(range > 0.0)) {
        throw std::domain_error("degenerate fit: all abscissae equal");
    }

    // Profile the onset by golden-section search, solving the linear part
    // exactly at each trial onset.
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = x_min - 4.0 * range;
    double hi = x_min - 1e-9 * range;
    double c = hi - phi * (hi - lo);
    double d = lo + phi * (hi - lo);
    double fc = fit_at_onset(points, c).rss;
    double fd = fit_at_onset(points, d).rss;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * range; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = fit_at_onset(points, c).rss;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = fit_at_onset(points, d).rss;
        }
    }
    double onset = 0.5 * (lo + hi);
    LinearFit lin = fit_at_onset(points, onset);
    Eigen::Vector3d p(lin.offset, lin.scale, onset);
    double rss = lin.rss;

    // Gauss-Newton polish of all three parameters.
    const auto residuals = [&](const Eigen::Vector3d& q, Eigen::MatrixXd* jac) {
        Eigen::VectorXd r(points.size());
        if (jac) {
            jac->resize(points.size(), 3);
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double s = std::sqrt(points[i].first - q(2));
            r(i) = q(0) + q(1) * s - points[i].second;
            if (jac) {
                (*jac)(i, 0) = 1.0;
                (*jac)(i, 1) = s;
                (*jac)(i, 2) = -q(1) / (2.0 * s);
            }
        }
        return r;
    };
    for (int it = 0; it < 50; ++it) {
        Eigen::MatrixXd jac;
        const Eigen::VectorXd r = residuals(p, &jac);
        const Eigen::Vector3d delta = jac.colPivHouseholderQr().solve(-r);
        if (!delta.allFinite()) {
            break;
        }
        double scale = 1.0;
        bool improved = false;
        for (int half = 0; half < 30; ++half, scale *= 0.5) {
            const Eigen::Vector3d trial = p + scale * delta;
            if (!(trial(2) < x_min)) {
                continue;
            }
            const double trial_rss = residuals(trial, nullptr).squaredNorm();
            if (trial_rss < rss) {
                p = trial;
                rss = trial_rss;
                improved = true;
                break;
            }
        }
        if (!improved) {
            break;
        }
    }
    if (!p.allFinite()) {
        throw std::domain_error("degenerate fit");
    }
    return {p(0), p(1), p(2), rss};
}

}  // namespace eppflags
