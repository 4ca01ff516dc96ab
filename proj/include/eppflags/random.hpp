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

#ifndef EPPFLAGS_RANDOM_HPP
#define EPPFLAGS_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>

namespace eppflags {

constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// SplitMix64 stream whose starting point is a hash of a key tuple, so that
/// independent streams (seed, domain, round, index, ...) need no shared state.
///
/// Distributions are implemented here rather than taken from <random> so that
/// draws are identical across standard libraries.
class KeyedRng {
   public:
    using result_type = std::uint64_t;

    KeyedRng(std::initializer_list<std::uint64_t> key) {
        std::uint64_t h = 0x6a09e667f3bcc909ULL;
        for (std::uint64_t k : key) {
            h = splitmix64_mix(h ^ splitmix64_mix(k + kGamma));
        }
        state_ = h;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        state_ += kGamma;
        return splitmix64_mix(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1).
    double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Uniform integer in [0, n) without modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("below(0)");
        }
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t x;
        do {
            x = (*this)();
        } while (x >= limit);
        return x % n;
    }

   private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

/// Stream domains, so that different uses of one seed never collide.
enum class RngDomain : std::uint64_t {
    kRegimeScan = 1,
    kInitialEnsemble = 2,
    kPairing = 3,
    kNoise = 4,
    kMeasurement = 5,
};

}  // namespace eppflags

#endif  // EPPFLAGS_RANDOM_HPP
