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
#include <stdexcept>

#include "eppflags/matrix_oracle.hpp"

namespace eppflags::oracle {
namespace {

PairMatrix projector(const PairVector& v) { return v * v.adjoint(); }

TEST(MatrixOracle, BellBasisIsOrthonormal) {
    for (BellIndex a : kAllBellIndices) {
        for (BellIndex b : kAllBellIndices) {
            const Complex ip = bell_vector(a).dot(bell_vector(b));
            EXPECT_NEAR(std::abs(ip), a == b ? 1.0 : 0.0, 1e-14);
        }
    }
}

TEST(MatrixOracle, PaulisMapBellStatesLikeBitFlips) {
    for (PauliIndex p : kAllPauliIndices) {
        for (BellIndex b : kAllBellIndices) {
            const PairVector moved = pauli_on_pair(p) * bell_vector(b);
            EXPECT_NEAR(overlap_modulus(moved, bell_vector(pauli_on_bell(p, b))), 1.0, 1e-14);
        }
    }
}

TEST(MatrixOracle, CircuitsAreUnitary) {
    for (Circuit c : {Circuit::kXRot, Circuit::kBcnot, Circuit::kEpp}) {
        const TwoPairMatrix u = circuit_matrix(c);
        EXPECT_TRUE((u * u.adjoint()).isIdentity(1e-12));
    }
}

TEST(MatrixOracle, EppIsBcnotAfterRotation) {
    const TwoPairMatrix composed = circuit_matrix(Circuit::kBcnot) * circuit_matrix(Circuit::kXRot);
    EXPECT_TRUE(composed.isApprox(circuit_matrix(Circuit::kEpp), 1e-12));
}

TEST(MatrixOracle, TwirlKeepsBellDiagonalStates) {
    PairMatrix rho = 0.7 * projector(bell_vector(kPhiPlus)) + 0.2 * projector(bell_vector(kPsiMinus)) +
                     0.1 * projector(bell_vector(kPhiMinus));
    EXPECT_TRUE(twirl_matrix(rho).isApprox(rho, 1e-12));
    const auto w = twirl(rho);
    EXPECT_NEAR(w[kPhiPlus.code()], 0.7, 1e-14);
    EXPECT_NEAR(w[kPsiMinus.code()], 0.2, 1e-14);
    EXPECT_NEAR(w[kPhiMinus.code()], 0.1, 1e-14);
    EXPECT_NEAR(w[kPsiPlus.code()], 0.0, 1e-14);
}

TEST(MatrixOracle, TwirlRemovesCoherences) {
    const PairVector v = (bell_vector(kPhiPlus) + bell_vector(kPsiPlus)) / std::sqrt(2.0);
    const PairMatrix rho = projector(v);
    validate_density_matrix(rho);
    const PairMatrix t = twirl_matrix(rho);
    EXPECT_NEAR(std::abs((bell_vector(kPhiPlus).adjoint() * t * bell_vector(kPsiPlus))(0, 0)), 0.0, 1e-14);
    const auto diag = bell_diagonal(rho);
    const auto w = twirl(rho);
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(w[i], diag[i], 1e-14);
    }
    EXPECT_NEAR(w[kPhiPlus.code()], 0.5, 1e-14);
}

TEST(MatrixOracle, ValidationRejectsNonStates) {
    PairMatrix rho = projector(bell_vector(kPhiPlus));
    EXPECT_NO_THROW(validate_density_matrix(rho));
    EXPECT_THROW(validate_density_matrix(2.0 * rho), std::invalid_argument);
    PairMatrix skew = rho;
    skew(0, 1) += Complex(0.0, 0.3);
    EXPECT_THROW(validate_density_matrix(skew), std::invalid_argument);
    const PairMatrix negative = 1.5 * rho - 0.5 * projector(bell_vector(kPsiPlus));
    EXPECT_THROW(validate_density_matrix(negative), std::invalid_argument);
}

}  // namespace
}  // namespace eppflags::oracle
