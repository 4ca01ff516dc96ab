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

#ifndef EPPFLAGS_MATRIX_ORACLE_HPP
#define EPPFLAGS_MATRIX_ORACLE_HPP

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "eppflags/bellbits.hpp"

/// Brute-force state-vector reference for the bit algebra.
///
/// Qubit ordering is fixed as (A1, B1, A2, B2): A1 is the most significant
/// bit of a 16-dimensional basis index and B2 the least significant. A single
/// pair uses (A, B) with basis order |00>, |01>, |10>, |11>. The left factor
/// of every Kronecker product is the source pair.
namespace eppflags::oracle {

using Complex = std::complex<double>;
using PairVector = Eigen::Matrix<Complex, 4, 1>;
using PairMatrix = Eigen::Matrix<Complex, 4, 4>;
using TwoPairVector = Eigen::Matrix<Complex, 16, 1>;
using TwoPairMatrix = Eigen::Matrix<Complex, 16, 16>;

enum class Circuit { kXRot, kBcnot, kEpp };

PairVector bell_vector(BellIndex b);
TwoPairVector bell_vector(BellIndex src, BellIndex tgt);

Eigen::Matrix2cd pauli_matrix(PauliIndex op);

/// Pauli `op` on Alice's qubit of a single pair.
PairMatrix pauli_on_pair(PauliIndex op);

/// e_src on A1 and e_tgt on A2.
TwoPairMatrix two_pair_pauli(PauliIndex e_src, PauliIndex e_tgt);

/// 16x16 unitary of the named circuit on (A1, B1, A2, B2). kEpp is
/// kBcnot * kXRot; kXRot applies U_x = exp(-i pi/4 X) on A1, A2 and its
/// inverse on B1, B2.
TwoPairMatrix circuit_matrix(Circuit which);

/// |<a|b>| for normalized vectors; 1 means equal up to global phase.
template <typename Vector>
double overlap_modulus(const Vector& a, const Vector& b) {
    return std::abs(a.dot(b));
}

/// Throws std::invalid_argument unless rho is Hermitian, unit-trace and
/// positive semidefinite within `tolerance`.
void validate_density_matrix(const PairMatrix& rho, double tolerance = 1e-10);

/// Average of (s_k x s_k) rho (s_k x s_k) over the four Paulis.
PairMatrix twirl_matrix(const PairMatrix& rho);

/// Bell-diagonal weights of the twirled state, indexed by BellIndex::code().
std::array<double, 4> twirl(const PairMatrix& rho);

/// <B_b| rho |B_b> for every Bell state, indexed by BellIndex::code().
std::array<double, 4> bell_diagonal(const PairMatrix& rho);

}  // namespace eppflags::oracle

#endif  // EPPFLAGS_MATRIX_ORACLE_HPP
