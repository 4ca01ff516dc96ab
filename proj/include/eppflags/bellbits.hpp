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

#ifndef EPPFLAGS_BELLBITS_HPP
#define EPPFLAGS_BELLBITS_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string_view>

/// Bit-level algebra of Bell states, Pauli errors and the recurrence
/// purification circuit.
///
/// A Bell state |B_{i,j}> = (|0 j> + (-1)^i |1 !j>)/sqrt(2) is labelled by
/// its phase bit i and amplitude bit j. A Pauli operator sigma_{p,a} is
/// labelled by a phase-flip bit p and an amplitude-flip bit a, so that
/// Id = (0,0), X = (0,1), Y = (1,1), Z = (1,0). Applying sigma_{p,a} to either
/// qubit of |B_{i,j}> yields |B_{i^p, j^a}> up to a global phase. All
/// identities in this header hold up to global phase.
namespace eppflags {

namespace detail {

constexpr std::uint8_t checked_bit(int value) {
    if (value != 0 && value != 1) {
        throw std::invalid_argument("bit value must be 0 or 1");
    }
    return static_cast<std::uint8_t>(value);
}

}  // namespace detail

/// Bell state label (phase bit, amplitude bit).
class BellIndex {
   public:
    constexpr BellIndex() = default;
    constexpr BellIndex(int phase, int amplitude)
        : phase_(detail::checked_bit(phase)), amplitude_(detail::checked_bit(amplitude)) {}

    /// Inverse of code(): code = 2 * phase + amplitude.
    static constexpr BellIndex from_code(int code) {
        if (code < 0 || code > 3) {
            throw std::invalid_argument("Bell index code must be in [0, 4)");
        }
        return BellIndex(code >> 1, code & 1);
    }

    constexpr int phase() const { return phase_; }
    constexpr int amplitude() const { return amplitude_; }
    constexpr int code() const { return 2 * phase_ + amplitude_; }

    friend constexpr bool operator==(BellIndex, BellIndex) = default;

   private:
    std::uint8_t phase_ = 0;
    std::uint8_t amplitude_ = 0;
};

/// Pauli operator label sigma_{p,a}.
class PauliIndex {
   public:
    constexpr PauliIndex() = default;
    constexpr PauliIndex(int phase_flip, int amplitude_flip)
        : phase_flip_(detail::checked_bit(phase_flip)),
          amplitude_flip_(detail::checked_bit(amplitude_flip)) {}

    static constexpr PauliIndex from_code(int code) {
        if (code < 0 || code > 3) {
            throw std::invalid_argument("Pauli index code must be in [0, 4)");
        }
        return PauliIndex(code >> 1, code & 1);
    }

    constexpr int phase_flip() const { return phase_flip_; }
    constexpr int amplitude_flip() const { return amplitude_flip_; }
    constexpr int code() const { return 2 * phase_flip_ + amplitude_flip_; }

    friend constexpr bool operator==(PauliIndex, PauliIndex) = default;

   private:
    std::uint8_t phase_flip_ = 0;
    std::uint8_t amplitude_flip_ = 0;
};

/// Error flag kept by the lab demon for every pair.
class FlagPair {
   public:
    constexpr FlagPair() = default;
    constexpr FlagPair(int phase_error, int amplitude_error)
        : phase_error_(detail::checked_bit(phase_error)),
          amplitude_error_(detail::checked_bit(amplitude_error)) {}

    static constexpr FlagPair from_code(int code) {
        if (code < 0 || code > 3) {
            throw std::invalid_argument("flag code must be in [0, 4)");
        }
        return FlagPair(code >> 1, code & 1);
    }

    constexpr int phase_error() const { return phase_error_; }
    constexpr int amplitude_error() const { return amplitude_error_; }
    constexpr int code() const { return 2 * phase_error_ + amplitude_error_; }

    friend constexpr bool operator==(FlagPair, FlagPair) = default;

   private:
    std::uint8_t phase_error_ = 0;
    std::uint8_t amplitude_error_ = 0;
};

inline constexpr BellIndex kPhiPlus{0, 0};
inline constexpr BellIndex kPsiPlus{0, 1};
inline constexpr BellIndex kPhiMinus{1, 0};
inline constexpr BellIndex kPsiMinus{1, 1};

inline constexpr PauliIndex kIdentity{0, 0};
inline constexpr PauliIndex kSigmaX{0, 1};
inline constexpr PauliIndex kSigmaY{1, 1};
inline constexpr PauliIndex kSigmaZ{1, 0};

/// Ordered by code(): Phi+, Psi+, Phi-, Psi-.
inline constexpr std::array<BellIndex, 4> kAllBellIndices{kPhiPlus, kPsiPlus, kPhiMinus, kPsiMinus};
/// Ordered by code(): Id, X, Z, Y.
inline constexpr std::array<PauliIndex, 4> kAllPauliIndices{kIdentity, kSigmaX, kSigmaZ, kSigmaY};
inline constexpr std::array<FlagPair, 4> kAllFlags{FlagPair{0, 0}, FlagPair{0, 1}, FlagPair{1, 0},
                                                   FlagPair{1, 1}};

/// Source and target pair of a two-pair operation.
struct BellPair {
    BellIndex source;
    BellIndex target;
    friend constexpr bool operator==(const BellPair&, const BellPair&) = default;
};

struct PauliPair {
    PauliIndex source;
    PauliIndex target;
    friend constexpr bool operator==(const PauliPair&, const PauliPair&) = default;
};

constexpr std::string_view name(BellIndex b) {
    constexpr std::array<std::string_view, 4> names{"Phi+", "Psi+", "Phi-", "Psi-"};
    return names[b.code()];
}

constexpr std::string_view name(PauliIndex p) {
    constexpr std::array<std::string_view, 4> names{"Id", "X", "Z", "Y"};
    return names[p.code()];
}

/// Letter used for the ensemble coefficients: A = Phi+, B = Psi-, C = Psi+,
/// D = Phi-.
constexpr char letter(BellIndex b) {
    constexpr std::array<char, 4> letters{'A', 'C', 'D', 'B'};
    return letters[b.code()];
}

constexpr BellIndex pauli_on_bell(PauliIndex op, BellIndex b) {
    return {b.phase() ^ op.phase_flip(), b.amplitude() ^ op.amplitude_flip()};
}

/// U_x on Alice's qubit and U_x^{-1} on Bob's: (i, j) -> (i, j ^ i).
constexpr BellIndex bilateral_xrot(BellIndex b) { return {b.phase(), b.amplitude() ^ b.phase()}; }

/// (i, j)(i', j') -> (i ^ i', j)(i', j ^ j').
constexpr BellPair bcnot(BellIndex src, BellIndex tgt) {
    return {{src.phase() ^ tgt.phase(), src.amplitude()},
            {tgt.phase(), src.amplitude() ^ tgt.amplitude()}};
}

/// Unitary part of one purification step: bilateral rotations then BCNOT.
/// (i, j)(i', j') -> (i ^ i', i ^ j)(i', i' ^ j' ^ i ^ j).
constexpr BellPair epp_unitary(BellIndex src, BellIndex tgt) {
    const int i = src.phase();
    const int j = src.amplitude();
    const int ip = tgt.phase();
    const int jp = tgt.amplitude();
    return {{i ^ ip, i ^ j}, {ip, ip ^ jp ^ i ^ j}};
}

/// Pauli errors on source and target followed by epp_unitary.
constexpr BellPair epp_with_errors(BellIndex src, BellIndex tgt, PauliIndex e_src, PauliIndex e_tgt) {
    return epp_unitary(pauli_on_bell(e_src, src), pauli_on_bell(e_tgt, tgt));
}

/// Bilateral z measurements of the target agree iff its amplitude bit is 0.
constexpr bool keep_predicate(BellIndex tgt_out) { return tgt_out.amplitude() == 0; }

/// Paulis that, applied after epp_unitary, reproduce the effect of the
/// error e_src x e_tgt applied before it.
constexpr PauliPair error_corrector(PauliIndex e_src, PauliIndex e_tgt) {
    const int p = e_src.phase_flip();
    const int a = e_src.amplitude_flip();
    const int pp = e_tgt.phase_flip();
    const int ap = e_tgt.amplitude_flip();
    return {{p ^ pp, p ^ a}, {pp, pp ^ ap ^ p ^ a}};
}

constexpr FlagPair flag_flip(FlagPair f, PauliIndex op) {
    return {f.phase_error() ^ op.phase_flip(), f.amplitude_error() ^ op.amplitude_flip()};
}

/// Flag of the kept source pair given both parents' (already flipped) flags.
/// The source part of the error corrector, reset to (0,0) whenever the target
/// carries an amplitude error.
constexpr FlagPair flag_update(FlagPair f_src, FlagPair f_tgt) {
    const int p = f_src.phase_error();
    const int a = f_src.amplitude_error();
    const int pp = f_tgt.phase_error();
    const int ap = f_tgt.amplitude_error();
    if ((pp ^ ap ^ p ^ a) != 0) {
        return {0, 0};
    }
    return {p ^ pp, p ^ a};
}

}  // namespace eppflags

#endif  // EPPFLAGS_BELLBITS_HPP
