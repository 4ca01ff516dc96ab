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


#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "eppflags/bellbits.hpp"
#include "eppflags/dynamics.hpp"
#include "eppflags/montecarlo.hpp"
#include "eppflags/noise.hpp"
#include "eppflags/recurrence.hpp"

namespace py = pybind11;
using namespace eppflags;

namespace {

template <typename State>
void bind_fixpoint(py::module_& m, const char* name) {
    py::class_<FixpointResult<State>>(m, name)
        .def_readonly("state", &FixpointResult<State>::state)
        .def_readonly("iterations", &FixpointResult<State>::iterations)
        .def_readonly("converged", &FixpointResult<State>::converged)
        .def_readonly("residual", &FixpointResult<State>::residual)
        .def_readonly("keep_probability", &FixpointResult<State>::keep_probability)
        .def_readonly("failure", &FixpointResult<State>::failure);
}

template <typename State>
void bind_step(py::module_& m, const char* name) {
    py::class_<StepResult<State>>(m, name)
        .def_readonly("state", &StepResult<State>::state)
        .def_readonly("keep_probability", &StepResult<State>::keep_probability);
}

IterationOptions iteration_options(double tol, std::size_t max_iter) {
    IterationOptions o;
    o.tolerance = tol;
    o.max_iterations = max_iter;
    return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Flagged two-way entanglement purification: recurrence maps, fixpoints, regimes, Monte Carlo.";
    m.attr("__version__") = EPPFLAGS_VERSION;

    py::register_exception<InvalidNoiseModel>(m, "InvalidNoiseModel", PyExc_ValueError);
    py::register_exception<InvalidState>(m, "InvalidState", PyExc_ValueError);
    py::register_exception<EnsembleAnnihilated>(m, "EnsembleAnnihilated", PyExc_RuntimeError);
    py::register_exception<NoSignChange>(m, "NoSignChange", PyExc_ValueError);
    py::register_exception<ResourceUnreachable>(m, "ResourceUnreachable", PyExc_RuntimeError);

    // Bit algebra on integer codes: Bell 2*phase + amplitude, Pauli 0 Id, 1 X, 2 Z, 3 Y.
    m.def(
        "epp_with_errors",
        [](int src, int tgt, int e_src, int e_tgt) {
            const BellPair out = epp_with_errors(BellIndex::from_code(src), BellIndex::from_code(tgt),
                                                 PauliIndex::from_code(e_src), PauliIndex::from_code(e_tgt));
            return std::make_pair(out.source.code(), out.target.code());
        },
        py::arg("src"), py::arg("tgt"), py::arg("e_src") = 0, py::arg("e_tgt") = 0);
    m.def(
        "flag_update",
        [](int f_src, int f_tgt) { return flag_update(FlagPair::from_code(f_src), FlagPair::from_code(f_tgt)).code(); },
        py::arg("f_src"), py::arg("f_tgt"));
    m.def("cell_name", &cell_name, py::arg("index"));

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_static(
            "general",
            [](const std::array<double, 16>& f, double tol) { return NoiseModel::general(f, tol); },
            py::arg("weights"), py::arg("normalization_tolerance") = kNormalizationTolerance)
        .def_property_readonly("weights", &NoiseModel::weights)
        .def("__call__",
             [](const NoiseModel& n, int mu, int nu) { return n(PauliIndex::from_code(mu), PauliIndex::from_code(nu)); })
        .def("source_marginal", &NoiseModel::source_marginal)
        .def("target_marginal", &NoiseModel::target_marginal)
        .def("__eq__", [](const NoiseModel& a, const NoiseModel& b) { return a == b; });

    m.def("one_qubit_white", &one_qubit_white, py::arg("f0"));
    m.def("one_qubit_depolarizing", &one_qubit_depolarizing, py::arg("reliability"));
    m.def("product", &product, py::arg("fa"), py::arg("fb"));
    m.def("two_qubit_depolarizing", &two_qubit_depolarizing, py::arg("reliability"));
    m.def("compose", &compose, py::arg("first"), py::arg("second"));
    m.def("from_p1_p2", &from_p1_p2, py::arg("p1"), py::arg("p2"), py::arg("both_labs") = false);
    m.def(
        "white_noise",
        [](double f0) {
            const PauliWeights w = one_qubit_white(f0);
            return product(w, w);
        },
        py::arg("f0"));

    py::class_<BinaryNoiseModel>(m, "BinaryNoiseModel")
        .def(py::init<double, double, double, double, double>(), py::arg("f00"), py::arg("f01"), py::arg("f10"),
             py::arg("f11"), py::arg("normalization_tolerance") = kNormalizationTolerance)
        .def_static("uncorrelated", &BinaryNoiseModel::uncorrelated, py::arg("f0"))
        .def_static("from_noise", &BinaryNoiseModel::from_noise, py::arg("noise"), py::arg("tolerance") = 1e-12)
        .def_property_readonly("f00", &BinaryNoiseModel::f00)
        .def_property_readonly("f01", &BinaryNoiseModel::f01)
        .def_property_readonly("f10", &BinaryNoiseModel::f10)
        .def_property_readonly("f11", &BinaryNoiseModel::f11)
        .def_property_readonly("f_s", &BinaryNoiseModel::f_s)
        .def("embed", &BinaryNoiseModel::embed);

    py::class_<BellDiagonalState>(m, "BellDiagonalState")
        .def(py::init<>())
        .def_static("from_letters", &BellDiagonalState::from_letters, py::arg("A"), py::arg("B"), py::arg("C"),
                    py::arg("D"), py::arg("tolerance") = kStateTolerance)
        .def_static("werner", &BellDiagonalState::werner, py::arg("fidelity"))
        .def_property_readonly("A", &BellDiagonalState::A)
        .def_property_readonly("B", &BellDiagonalState::B)
        .def_property_readonly("C", &BellDiagonalState::C)
        .def_property_readonly("D", &BellDiagonalState::D)
        .def_property_readonly("coeffs", &BellDiagonalState::coeffs);

    py::class_<FlaggedEnsembleState>(m, "FlaggedEnsembleState")
        .def(py::init<>())
        .def_static(
            "from_values",
            [](const std::array<double, 16>& v, double tol) { return FlaggedEnsembleState::from_values(v, tol); },
            py::arg("values"), py::arg("tolerance") = kStateTolerance)
        .def_property_readonly("values", &FlaggedEnsembleState::values)
        .def("__getitem__", [](const FlaggedEnsembleState& s, int i) { return s[i]; });

    py::class_<BinaryFlaggedState>(m, "BinaryFlaggedState")
        .def(py::init<double, double, double, double, double>(), py::arg("a0"), py::arg("a1"), py::arg("b0"),
             py::arg("b1"), py::arg("tolerance") = kStateTolerance)
        .def_static("with_fidelity", &BinaryFlaggedState::with_fidelity, py::arg("fidelity"))
        .def_property_readonly("values", &BinaryFlaggedState::values);

    py::class_<QuadraticMap>(m, "QuadraticMap")
        .def_property_readonly("matrices",
                               [](const QuadraticMap& q) {
                                   std::vector<Matrix16> out(q.matrices().begin(), q.matrices().end());
                                   return out;
                               })
        .def_property_readonly("total", &QuadraticMap::total)
        .def("evaluate", &QuadraticMap::evaluate, py::arg("a"));
    m.def("generate_map", &generate_map, py::arg("noise"));

    bind_step<FlaggedEnsembleState>(m, "FlaggedStep");
    bind_step<BellDiagonalState>(m, "BellDiagonalStep");
    bind_step<BinaryFlaggedState>(m, "BinaryStep");
    m.def("step", &step, py::arg("state"), py::arg("map"));
    m.def("ideal_step", &ideal_step, py::arg("state"));
    m.def("binary_step", &binary_step, py::arg("state"), py::arg("noise"));

    m.def("fidelity", py::overload_cast<const FlaggedEnsembleState&>(&fidelity));
    m.def("fidelity", py::overload_cast<const BinaryFlaggedState&>(&fidelity));
    m.def("fidelity", py::overload_cast<const BellDiagonalState&>(&fidelity));
    m.def("conditional_fidelity", py::overload_cast<const FlaggedEnsembleState&>(&conditional_fidelity));
    m.def("conditional_fidelity", py::overload_cast<const BinaryFlaggedState&>(&conditional_fidelity));
    m.def("off_diagonal_mass", py::overload_cast<const FlaggedEnsembleState&>(&off_diagonal_mass));
    m.def("off_diagonal_mass", py::overload_cast<const BinaryFlaggedState&>(&off_diagonal_mass));
    m.def("embed", py::overload_cast<const BellDiagonalState&>(&embed));
    m.def("embed", py::overload_cast<const BinaryFlaggedState&>(&embed));
    m.def("marginal", &marginal);
    m.def("restrict_to_binary", &restrict_to_binary, py::arg("state"), py::arg("tolerance") = kStateTolerance);

    bind_fixpoint<FlaggedEnsembleState>(m, "FlaggedFixpoint");
    bind_fixpoint<BinaryFlaggedState>(m, "BinaryFixpoint");
    bind_fixpoint<BellDiagonalState>(m, "BellDiagonalFixpoint");
    m.def(
        "iterate_to_fixpoint",
        [](const FlaggedEnsembleState& start, const NoiseModel& noise, double tol, std::size_t max_iter) {
            return iterate_to_fixpoint(start, generate_map(noise), iteration_options(tol, max_iter));
        },
        py::arg("start"), py::arg("noise"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
    m.def(
        "iterate_to_fixpoint",
        [](const BinaryFlaggedState& start, const BinaryNoiseModel& noise, double tol, std::size_t max_iter) {
            return iterate_to_fixpoint(start, noise, iteration_options(tol, max_iter));
        },
        py::arg("start"), py::arg("noise"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
    m.def(
        "iterate_to_fixpoint",
        [](const BellDiagonalState& start, double tol, std::size_t max_iter) {
            return iterate_to_fixpoint(start, iteration_options(tol, max_iter));
        },
        py::arg("start"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
    m.def("binary_fixpoint_analytic", &binary_fixpoint_analytic, py::arg("f0"));

    m.def(
        "jacobian", [](const NoiseModel& noise, const FlaggedEnsembleState& s) { return jacobian(generate_map(noise), s); },
        py::arg("noise"), py::arg("state"));
    m.def(
        "jacobian", [](const BinaryNoiseModel& noise, const BinaryFlaggedState& s) { return jacobian(noise, s); },
        py::arg("noise"), py::arg("state"));
    m.def("spectral_radius", &spectral_radius, py::arg("matrix"));

    py::enum_<Regime>(m, "Regime")
        .value("HIGH_NOISE", Regime::kHighNoise)
        .value("INTERMEDIATE", Regime::kIntermediate)
        .value("SECURITY", Regime::kSecurity);
    py::class_<RegimeReport>(m, "RegimeReport")
        .def_readonly("regime", &RegimeReport::regime)
        .def_readonly("fidelity", &RegimeReport::fidelity)
        .def_readonly("conditional_fidelity", &RegimeReport::conditional_fidelity)
        .def_readonly("iterations", &RegimeReport::iterations)
        .def_readonly("converged", &RegimeReport::converged)
        .def_readonly("warning", &RegimeReport::warning);
    m.def(
        "classify_regime",
        [](const NoiseModel& noise, double tol, std::size_t max_iter) {
            return classify_regime(noise, iteration_options(tol, max_iter));
        },
        py::arg("noise"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);
    m.def(
        "classify_regime",
        [](const BinaryNoiseModel& noise, const BinaryFlaggedState& start, double tol, std::size_t max_iter) {
            return classify_regime(noise, start, iteration_options(tol, max_iter));
        },
        py::arg("noise"), py::arg("start"), py::arg("tol") = 1e-12, py::arg("max_iter") = 100000);

    py::class_<CriticalResult>(m, "CriticalResult")
        .def_readonly("critical", &CriticalResult::critical)
        .def_readonly("lower", &CriticalResult::lower)
        .def_readonly("upper", &CriticalResult::upper)
        .def_readonly("halvings", &CriticalResult::halvings);
    m.def(
        "find_critical",
        [](const std::string& family, double lower, double upper, std::size_t halvings) {
            const NoiseFamily f = parse_noise_family(family);
            CriticalOptions o;
            o.halvings = halvings;
            o.probe = default_probe_options(f);
            return find_critical(f, lower, upper, o);
        },
        py::arg("family"), py::arg("lower"), py::arg("upper"), py::arg("halvings") = 40);

    m.def(
        "regime_scan",
        [](double f00, std::size_t samples, std::uint64_t seed, unsigned threads) {
            const RegimeHistogram h = regime_scan(f00, samples, seed, {}, threads);
            py::dict out;
            out["high_noise"] = h.high_noise;
            out["intermediate"] = h.intermediate;
            out["security"] = h.security;
            out["warnings"] = h.warnings;
            return out;
        },
        py::arg("f00"), py::arg("samples"), py::arg("seed") = 1, py::arg("threads") = 1);

    py::class_<CurvePoint>(m, "CurvePoint")
        .def_readonly("segment", &CurvePoint::segment)
        .def_readonly("t", &CurvePoint::t)
        .def_readonly("f_cond", &CurvePoint::f_cond)
        .def_readonly("f_cond_next", &CurvePoint::f_cond_next);
    m.def("purification_curve", &purification_curve, py::arg("noise"), py::arg("n_max"), py::arg("segment_points"),
          py::arg("seed") = default_curve_seed());
    m.def("terminal_slope", &terminal_slope, py::arg("curve"));

    py::class_<IntermediateFit>(m, "IntermediateFit")
        .def_readonly("offset", &IntermediateFit::offset)
        .def_readonly("scale", &IntermediateFit::scale)
        .def_readonly("onset", &IntermediateFit::onset)
        .def_readonly("residual_sum_squares", &IntermediateFit::residual_sum_squares);
    m.def(
        "fit_intermediate",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            if (x.size() != y.size()) {
                throw py::value_error("x and y differ in length");
            }
            std::vector<std::pair<double, double>> pts;
            for (std::size_t i = 0; i < x.size(); ++i) {
                pts.emplace_back(x[i], y[i]);
            }
            return fit_intermediate(pts);
        },
        py::arg("x"), py::arg("y"));

    py::class_<McConfig>(m, "McConfig")
        .def(py::init<>())
        .def_readwrite("n_pairs", &McConfig::n_pairs)
        .def_readwrite("initial", &McConfig::initial)
        .def_readwrite("noise", &McConfig::noise)
        .def_readwrite("rounds", &McConfig::rounds)
        .def_readwrite("seed", &McConfig::seed)
        .def_readwrite("track_flags", &McConfig::track_flags)
        .def_readwrite("threads", &McConfig::threads);
    py::class_<RoundStats>(m, "RoundStats")
        .def_readonly("round", &RoundStats::round)
        .def_readonly("pairs_remaining", &RoundStats::pairs_remaining)
        .def_readonly("f_hat", &RoundStats::f_hat)
        .def_readonly("f_cond_hat", &RoundStats::f_cond_hat)
        .def_readonly("cells", &RoundStats::cells);
    m.def("run", &run, py::arg("config"), py::call_guard<py::gil_scoped_release>());

    py::class_<ResourcePoint>(m, "ResourcePoint")
        .def_readonly("round", &ResourcePoint::round)
        .def_readonly("epsilon", &ResourcePoint::epsilon)
        .def_readonly("pairs", &ResourcePoint::pairs);
    py::class_<ResourceEstimate>(m, "ResourceEstimate")
        .def_readonly("pairs_required", &ResourceEstimate::pairs_required)
        .def_readonly("pairs", &ResourceEstimate::pairs)
        .def_readonly("rounds", &ResourceEstimate::rounds)
        .def_readonly("epsilon", &ResourceEstimate::epsilon);
    m.def("resource_curve", &resource_curve, py::arg("noise"), py::arg("start"), py::arg("target_eps"),
          py::arg("max_rounds") = 10000);
    m.def("resources", py::overload_cast<const McConfig&, double>(&resources), py::arg("config"),
          py::arg("target_eps"));
    py::class_<LogLogFit>(m, "LogLogFit")
        .def_readonly("slope", &LogLogFit::slope)
        .def_readonly("intercept", &LogLogFit::intercept)
        .def_readonly("r_squared", &LogLogFit::r_squared)
        .def_readonly("points", &LogLogFit::points);
    m.def(
        "fit_log_log",
        [](const std::vector<ResourcePoint>& pts, double eps_min, double eps_max) {
            return fit_log_log(pts, eps_min, eps_max);
        },
        py::arg("points"), py::arg("eps_min"), py::arg("eps_max"));
}
