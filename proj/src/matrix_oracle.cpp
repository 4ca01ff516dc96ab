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

#include "eppflags/matrix_oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eppflags::oracle {

namespace {

constexpr Complex kI{0.0, 1.0};

// Bit positions of each qubit inside a 16-dimensional basis index.
constexpr int kBitA1 = 3;
constexpr int kBitB1 = 2;
constexpr int kBitA2 = 1;
constexpr int kBitB2 = 0;

int bit(int index, int position) { return (index >> position) & 1; }

TwoPairMatrix kron4(const Eigen::Matrix2cd& a1, const Eigen::Matrix2cd& b1, const Eigen::Matrix2cd& a2,
                    const Eigen::Matrix2cd& b2) {
    TwoPairMatrix out;
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            out(r, c) = a1(bit(r, kBitA1), bit(c, kBitA1)) * b1(bit(r, kBitB1), bit(c, kBitB1)) *
                        a2(bit(r, kBitA2), bit(c, kBitA2)) * b2(bit(r, kBitB2), bit(c, kBitB2));
        }
    }
    return out;
}

Eigen::Matrix2cd x_rotation(double sign) {
    // exp(-i sign pi/4 X) = (Id - i sign X) / sqrt(2)
    const Eigen::Matrix2cd x = pauli_matrix(kSigmaX);
    return (Eigen::Matrix2cd::Identity() - sign * kI * x) / std::sqrt(2.0);
}

TwoPairMatrix bcnot_matrix() {
    TwoPairMatrix out = TwoPairMatrix::Zero();
    for (int c = 0; c < 16; ++c) {
        int r = c;
        if (bit(c, kBitA1) != 0) {
            r ^= 1 << kBitA2;
        }
        if (bit(c, kBitB1) != 0) {
            r ^= 1 << kBitB2;
        }
        out(r, c) = 1.0;
    }
    return out;
}

}  // namespace

PairVector bell_vector(BellIndex b) {
    // (|0 j> + (-1)^i |1 !j>) / sqrt(2)
    PairVector v = PairVector::Zero();
    const int j = b.amplitude();
    const double sign = b.phase() == 0 ? 1.0 : -1.0;
    v(j) = 1.0 / std::sqrt(2.0);
    v(2 + (1 - j)) = sign / std::sqrt(2.0);
    return v;
}

TwoPairVector bell_vector(BellIndex src, BellIndex tgt) {
    const PairVector s = bell_vector(src);
    const PairVector t = bell_vector(tgt);
    TwoPairVector out;
    for (int r = 0; r < 16; ++r) {
        // (A1 B1) is the high half of the index, (A2 B2) the low half.
        out(r) = s(r >> 2) * t(r & 3);
    }
    return out;
}

Eigen::Matrix2cd pauli_matrix(PauliIndex op) {
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    if (op.amplitude_flip() != 0) {
        m = x * m;
    }
    if (op.phase_flip() != 0) {
        m = z * m;
    }
    // Z X = i Y; drop the phase so that (1,1) is exactly Y.
    if (op.amplitude_flip() != 0 && op.phase_flip() != 0) {
        m *= -kI;
    }
    return m;
}

PairMatrix pauli_on_pair(PauliIndex op) {
    const Eigen::Matrix2cd p = pauli_matrix(op);
    PairMatrix out;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out(r, c) = p(r >> 1, c >> 1) * ((r & 1) == (c & 1) ? 1.0 : 0.0);
        }
    }
    return out;
}

TwoPairMatrix two_pair_pauli(PauliIndex e_src, PauliIndex e_tgt) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    return kron4(pauli_matrix(e_src), id, pauli_matrix(e_tgt), id);
}

TwoPairMatrix circuit_matrix(Circuit which) {
    switch (which) {
        case Circuit::kXRot: {
            const Eigen::Matrix2cd alice = x_rotation(1.0);
            const Eigen::Matrix2cd bob = x_rotation(-1.0);
            return kron4(alice, bob, alice, bob);
        }
        case Circuit::kBcnot:
            return bcnot_matrix();
        case Circuit::kEpp:
            return bcnot_matrix() * circuit_matrix(Circuit::kXRot);
    }
    throw std::invalid_argument("unknown circuit");
}

void validate_density_matrix(const PairMatrix& rho, double tolerance) {
    if (!rho.allFinite()) {
        throw std::invalid_argument("density matrix has non-finite entries");
    }
    const double hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (hermiticity > tolerance) {
        std::ostringstream msg;
        msg << "density matrix is not Hermitian (max deviation " << hermiticity << ")";
        throw std::invalid_argument(msg.str());
    }
    const Complex trace = rho.trace();
    if (std::abs(trace - Complex{1.0, 0.0}) > tolerance) {
        std::ostringstream msg;
        msg << "density matrix trace is " << trace.real() << "+" << trace.imag() << "i, expected 1";
        throw std::invalid_argument(msg.str());
    }
    const Eigen::SelfAdjointEigenSolver<PairMatrix> solver(rho, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (smallest < -tolerance) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << smallest;
        throw std::invalid_argument(msg.str());
    }
}

PairMatrix twirl_matrix(const PairMatrix& rho) {
    validate_density_matrix(rho);
    PairMatrix out = PairMatrix::Zero();
    for (PauliIndex k : kAllPauliIndices) {
        const Eigen::Matrix2cd s = pauli_matrix(k);
        PairMatrix bilateral;
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                bilateral(r, c) = s(r >> 1, c >> 1) * s(r & 1, c & 1);
            }
        }
        out += bilateral * rho * bilateral.adjoint();
    }
    return out / 4.0;
}

std::array<double, 4> bell_diagonal(const PairMatrix& rho) {
    std::array<double, 4> out{};
    for (BellIndex b : kAllBellIndices) {
        const PairVector v = bell_vector(b);
        out[b.code()] = (v.adjoint() * rho * v)(0, 0).real();
    }
    return out;
}

std::array<double, 4> twirl(const PairMatrix& rho) {
    std::array<double, 4> weights = bell_diagonal(twirl_matrix(rho));
    for (double& w : weights) {
        // Round-off can leave -1e-17 on an empty Bell component.
        if (w < 0.0) {
            w = 0.0;
        }
    }
    return weights;
}

}  // namespace eppflags::oracle
