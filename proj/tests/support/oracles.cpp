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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "eppflags/exact.hpp"
#include "eppflags/matrix_oracle.hpp"

namespace eppflags::testing {

namespace {

using exact::LinearForm;
using exact::Rational;

std::string describe(BellIndex b) { return std::string(name(b)); }
std::string describe(PauliIndex p) { return std::string(name(p)); }

bool proportional(const oracle::TwoPairMatrix& a, const oracle::TwoPairMatrix& b) {
    // Both unitary: a ~ b iff |tr(a^dagger b)| = 16.
    return std::abs(std::abs((a.adjoint() * b).trace()) - 16.0) < 1e-9;
}

}  // namespace

const std::array<std::array<FlagPair, 4>, 4> kFlagUpdateTable{{
    {FlagPair{0, 0}, FlagPair{0, 0}, FlagPair{0, 0}, FlagPair{1, 0}},
    {FlagPair{0, 0}, FlagPair{0, 1}, FlagPair{1, 1}, FlagPair{0, 0}},
    {FlagPair{0, 0}, FlagPair{1, 1}, FlagPair{0, 1}, FlagPair{0, 0}},
    {FlagPair{1, 0}, FlagPair{0, 0}, FlagPair{0, 0}, FlagPair{0, 0}},
}};

std::array<double, 16> printed_weights(double f00, double f0j, double fij) {
    std::array<double, 16> f{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            f[4 * mu + nu] = (mu == 0 && nu == 0) ? f00 : (mu == 0 || nu == 0) ? f0j : fij;
        }
    }
    return f;
}

std::array<double, 16> weights_p92() { return printed_weights(0.83981, 0.021131, 0.003712); }
std::array<double, 16> weights_p96() { return printed_weights(0.91279120, 0.0113896, 0.0020968); }

NoiseModel noise_p92() { return NoiseModel::general(weights_p92(), 1e-5); }
NoiseModel noise_p96() { return NoiseModel::general(weights_p96()); }

std::vector<Mismatch> bit_algebra_mismatches(std::size_t* cases_checked) {
    std::vector<Mismatch> out;
    std::size_t cases = 0;
    const oracle::TwoPairMatrix u = oracle::circuit_matrix(oracle::Circuit::kEpp);
    for (PauliIndex mu : kAllPauliIndices) {
        for (PauliIndex nu : kAllPauliIndices) {
            const oracle::TwoPairMatrix e = oracle::two_pair_pauli(mu, nu);
            for (BellIndex s : kAllBellIndices) {
                for (BellIndex t : kAllBellIndices) {
                    const oracle::TwoPairVector psi = u * e * oracle::bell_vector(s, t);
                    const BellPair bits = epp_with_errors(s, t, mu, nu);
                    if (std::abs(oracle::overlap_modulus(oracle::bell_vector(bits.source, bits.target), psi) - 1.0) >
                        1e-9) {
                        out.push_back({"epp_with_errors(" + describe(s) + ", " + describe(t) + ", " + describe(mu) +
                                       ", " + describe(nu) + ")"});
                    }
                }
            }
            // The corrector must be the unique Alice-side Pauli pair c with
            // c U e ~ U.
            const PauliPair expected = error_corrector(mu, nu);
            for (PauliIndex c1 : kAllPauliIndices) {
                for (PauliIndex c2 : kAllPauliIndices) {
                    for (BellIndex s : kAllBellIndices) {
                        for (BellIndex t : kAllBellIndices) {
                            ++cases;
                            const oracle::TwoPairVector ideal = u * oracle::bell_vector(s, t);
                            const oracle::TwoPairVector fixed =
                                oracle::two_pair_pauli(c1, c2) * u * e * oracle::bell_vector(s, t);
                            const bool undoes = std::abs(oracle::overlap_modulus(ideal, fixed) - 1.0) < 1e-9;
                            const bool chosen = c1 == expected.source && c2 == expected.target;
                            if (chosen && !undoes) {
                                out.push_back({"error_corrector(" + describe(mu) + ", " + describe(nu) +
                                               ") fails on " + describe(s) + ", " + describe(t)});
                            }
                        }
                    }
                    const bool undoes_everywhere = proportional(oracle::two_pair_pauli(c1, c2) * u * e, u);
                    const bool chosen = c1 == expected.source && c2 == expected.target;
                    if (undoes_everywhere != chosen) {
                        out.push_back({"corrector candidate (" + describe(c1) + ", " + describe(c2) + ") for (" +
                                       describe(mu) + ", " + describe(nu) + ")"});
                    }
                }
            }
        }
    }
    if (cases_checked) {
        *cases_checked = cases;
    }
    return out;
}

std::vector<Mismatch> noiseless_recurrence_mismatches() {
    // A' = A^2 + B^2, B' = 2CD, C' = C^2 + D^2, D' = 2AB and
    // N = (A+B)^2 + (C+D)^2, as monomial coefficients over letters.
    enum Letter { A, B, C, D };
    auto letter_of = [](BellIndex b) {
        switch (letter(b)) {
            case 'A':
                return A;
            case 'B':
                return B;
            case 'C':
                return C;
            default:
                return D;
        }
    };
    std::map<std::tuple<int, int, int>, Rational> expected;  // (out, i <= k)
    expected[{A, A, A}] = 1;
    expected[{A, B, B}] = 1;
    expected[{B, C, D}] = 2;
    expected[{C, C, C}] = 1;
    expected[{C, D, D}] = 1;
    expected[{D, A, B}] = 2;
    std::map<std::pair<int, int>, Rational> expected_n{
        {{A, A}, 1}, {{A, B}, 2}, {{B, B}, 1}, {{C, C}, 1}, {{C, D}, 2}, {{D, D}, 1}};

    std::array<Rational, 16> f{};
    f[0] = 1;
    const RoutedTerms<Rational> routed = route_terms(f);

    // Coefficient of x_u x_v (u, v flagged cells) once the letters are
    // replaced by their flag sums: c(s, t) for s != t, c(s, s) on the
    // diagonal and 2 c(s, s) for two flags of the same letter.
    auto marginal_coefficient = [](const auto& table, int i, int k, bool same_cell) {
        const auto it = table.find({std::min(i, k), std::max(i, k)});
        const Rational c = it == table.end() ? Rational(0) : it->second;
        return (i == k && !same_cell) ? Rational(2) * c : c;
    };

    std::vector<Mismatch> out;
    for (int u = 0; u < 16; ++u) {
        for (int v = u; v < 16; ++v) {
            const BellIndex s = BellIndex::from_code(u / 4);
            const BellIndex t = BellIndex::from_code(v / 4);
            const int i = letter_of(s);
            const int k = letter_of(t);
            Rational n_coeff;
            for (BellIndex b : kAllBellIndices) {
                Rational c;
                for (FlagPair fo : kAllFlags) {
                    const int j = flagged_index(b, fo);
                    c += routed.at(j, u, v);
                    if (u != v) {
                        c += routed.at(j, v, u);
                    }
                }
                n_coeff += c;
                std::map<std::pair<int, int>, Rational> row;
                for (const auto& [key, value] : expected) {
                    if (std::get<0>(key) == letter_of(b)) {
                        row[{std::get<1>(key), std::get<2>(key)}] = value;
                    }
                }
                const Rational want = marginal_coefficient(row, i, k, u == v);
                if (!(c == want)) {
                    std::ostringstream msg;
                    msg << letter(b) << "' coefficient of " << cell_name(u) << "*" << cell_name(v) << ": got " << c
                        << ", want " << want;
                    out.push_back({msg.str()});
                }
            }
            const Rational want = marginal_coefficient(expected_n, i, k, u == v);
            if (!(n_coeff == want)) {
                std::ostringstream msg;
                msg << "N coefficient of " << cell_name(u) << "*" << cell_name(v) << ": got " << n_coeff << ", want "
                    << want;
                out.push_back({msg.str()});
            }
        }
    }
    return out;
}

std::vector<Mismatch> binary_recurrence_mismatches() {
    using Form = LinearForm<4>;  // over (f00, f01, f10, f11)
    const Form f00 = Form::symbol(0);
    const Form f11 = Form::symbol(3);
    const Form fs = Form::symbol(1) + Form::symbol(2);
    const Rational two(2);

    // Variables x0..x3 = A0, A1, B0, B1.
    const std::array<int, 4> cell{flagged_index(kPhiPlus, FlagPair{0, 0}), flagged_index(kPhiPlus, FlagPair{0, 1}),
                                  flagged_index(kPsiPlus, FlagPair{0, 0}), flagged_index(kPsiPlus, FlagPair{0, 1})};
    enum { A0, A1, B0, B1 };
    std::map<std::tuple<int, int, int>, Form> expected;  // (out, i <= k)
    auto add = [&](int out, int i, int k, const Form& c) {
        auto& slot = expected[{out, std::min(i, k), std::max(i, k)}];
        slot += c;
    };
    add(A0, A0, A0, f00);
    add(A0, A0, A1, two * f00);
    add(A0, B1, B1, f11);
    add(A0, B0, B1, two * f11);
    add(A0, A0, B1, fs);
    add(A0, A1, B1, fs);
    add(A0, A0, B0, fs);
    add(A1, A1, A1, f00);
    add(A1, B0, B0, f11);
    add(A1, A1, B0, fs);
    add(B0, B0, B0, f00);
    add(B0, B0, B1, two * f00);
    add(B0, A1, A1, f11);
    add(B0, A0, A1, two * f11);
    add(B0, B0, A1, fs);
    add(B0, B1, A1, fs);
    add(B0, B0, A0, fs);
    add(B1, B1, B1, f00);
    add(B1, A0, A0, f11);
    add(B1, B1, A0, fs);

    // N = (f00 + f11)((A0 + A1)^2 + (B0 + B1)^2) + 2 fs (A0 + A1)(B0 + B1).
    std::map<std::pair<int, int>, Form> expected_n;
    const Form fd = f00 + f11;
    for (int i = 0; i < 4; ++i) {
        for (int k = i; k < 4; ++k) {
            const bool i_a = i < 2;
            const bool k_a = k < 2;
            const Rational mult = i == k ? Rational(1) : Rational(2);
            expected_n[{i, k}] = i_a == k_a ? mult * fd : two * fs;
        }
    }

    std::array<Form, 16> f{};
    f[4 * kIdentity.code() + kIdentity.code()] = Form::symbol(0);
    f[4 * kIdentity.code() + kSigmaX.code()] = Form::symbol(1);
    f[4 * kSigmaX.code() + kIdentity.code()] = Form::symbol(2);
    f[4 * kSigmaX.code() + kSigmaX.code()] = Form::symbol(3);
    const RoutedTerms<Form> routed = route_terms(f);

    std::vector<Mismatch> out;
    for (int i = 0; i < 4; ++i) {
        for (int k = i; k < 4; ++k) {
            Form n_coeff;
            for (int j = 0; j < 16; ++j) {
                Form c = routed.at(j, cell[i], cell[k]);
                if (i != k) {
                    c += routed.at(j, cell[k], cell[i]);
                }
                n_coeff += c;
                const auto pos = std::find(cell.begin(), cell.end(), j);
                Form want;
                if (pos != cell.end()) {
                    const auto it = expected.find({static_cast<int>(pos - cell.begin()), i, k});
                    if (it != expected.end()) {
                        want = it->second;
                    }
                }
                if (!(c == want)) {
                    std::ostringstream msg;
                    msg << "output " << cell_name(j) << ", monomial x" << i << "*x" << k << ": got " << c
                        << ", want " << want;
                    out.push_back({msg.str()});
                }
            }
            if (!(n_coeff == expected_n[{i, k}])) {
                std::ostringstream msg;
                msg << "N monomial x" << i << "*x" << k << ": got " << n_coeff << ", want " << expected_n[{i, k}];
                out.push_back({msg.str()});
            }
        }
    }
    return out;
}

std::vector<Mismatch> flag_table_mismatches() {
    std::vector<Mismatch> out;
    for (FlagPair tgt : kAllFlags) {
        for (FlagPair src : kAllFlags) {
            const FlagPair want = kFlagUpdateTable[tgt.code()][src.code()];
            const FlagPair got = flag_update(src, tgt);
            if (!(got == want)) {
                std::ostringstream msg;
                msg << "flag_update(src " << src.phase_error() << src.amplitude_error() << ", tgt "
                    << tgt.phase_error() << tgt.amplitude_error() << ") = " << got.phase_error()
                    << got.amplitude_error() << ", table says " << want.phase_error() << want.amplitude_error();
                out.push_back({msg.str()});
            }
        }
    }
    return out;
}

std::array<double, 4> iterated_binary_fixpoint(double f0, double tolerance, std::size_t max_iterations) {
    const double f1 = 1.0 - f0;
    const double g00 = f0 * f0;
    const double g11 = f1 * f1;
    const double gs = 2.0 * f0 * f1;
    std::array<double, 4> x{0.5 + f0 / 2.0, 0.0, 0.5 - f0 / 2.0, 0.0};
    for (std::size_t n = 0; n < max_iterations; ++n) {
        const auto [a0, a1, b0, b1] = x;
        std::array<double, 4> y{
            g00 * (a0 * a0 + 2 * a0 * a1) + g11 * (b1 * b1 + 2 * b0 * b1) + gs * (a0 * b1 + a1 * b1 + a0 * b0),
            g00 * a1 * a1 + g11 * b0 * b0 + gs * a1 * b0,
            g00 * (b0 * b0 + 2 * b0 * b1) + g11 * (a1 * a1 + 2 * a0 * a1) + gs * (b0 * a1 + b1 * a1 + b0 * a0),
            g00 * b1 * b1 + g11 * a0 * a0 + gs * b1 * a0,
        };
        const double n_keep = y[0] + y[1] + y[2] + y[3];
        double change = 0.0;
        for (int i = 0; i < 4; ++i) {
            y[i] /= n_keep;
            change = std::max(change, std::abs(y[i] - x[i]));
        }
        x = y;
        if (change < tolerance) {
            break;
        }
    }
    return x;
}

}  // namespace eppflags::testing
