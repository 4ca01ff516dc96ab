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

#ifndef EPPFLAGS_EXACT_HPP
#define EPPFLAGS_EXACT_HPP

#include <array>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

/// Small exact scalars for symbolic checks of the recurrence generator.
namespace eppflags::exact {

/// Reduced fraction with int64 numerator and positive denominator.
class Rational {
   public:
    constexpr Rational() : num_(0), den_(1) {}
    constexpr Rational(std::int64_t numerator, std::int64_t denominator = 1) : num_(numerator), den_(denominator) {
        if (den_ == 0) {
            throw std::domain_error("zero denominator");
        }
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const std::int64_t g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    constexpr std::int64_t numerator() const { return num_; }
    constexpr std::int64_t denominator() const { return den_; }
    constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    friend constexpr Rational operator+(Rational a, Rational b) {
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator-(Rational a, Rational b) {
        return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
    }
    friend constexpr Rational operator*(Rational a, Rational b) { return {a.num_ * b.num_, a.den_ * b.den_}; }
    friend constexpr Rational operator/(Rational a, Rational b) { return {a.num_ * b.den_, a.den_ * b.num_}; }
    constexpr Rational& operator+=(Rational other) { return *this = *this + other; }
    friend constexpr bool operator==(Rational, Rational) = default;

    friend std::ostream& operator<<(std::ostream& os, Rational r) {
        os << r.num_;
        if (r.den_ != 1) {
            os << '/' << r.den_;
        }
        return os;
    }

   private:
    std::int64_t num_;
    std::int64_t den_;
};

/// Linear form sum_k c_k x_k over N symbols with rational coefficients.
template <std::size_t N>
class LinearForm {
   public:
    constexpr LinearForm() { coeffs_.fill(Rational(0)); }

    static constexpr LinearForm symbol(std::size_t k) {
        LinearForm out;
        out.coeffs_.at(k) = Rational(1);
        return out;
    }

    constexpr Rational coefficient(std::size_t k) const { return coeffs_.at(k); }

    constexpr LinearForm& operator+=(const LinearForm& other) {
        for (std::size_t k = 0; k < N; ++k) {
            coeffs_[k] += other.coeffs_[k];
        }
        return *this;
    }
    friend constexpr LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend constexpr LinearForm operator*(Rational s, LinearForm a) {
        for (auto& c : a.coeffs_) {
            c = s * c;
        }
        return a;
    }
    friend constexpr bool operator==(const LinearForm&, const LinearForm&) = default;

    friend std::ostream& operator<<(std::ostream& os, const LinearForm& form) {
        bool first = true;
        for (std::size_t k = 0; k < N; ++k) {
            if (form.coeffs_[k] == Rational(0)) {
                continue;
            }
            os << (first ? "" : " + ") << form.coeffs_[k] << "*x" << k;
            first = false;
        }
        if (first) {
            os << '0';
        }
        return os;
    }

   private:
    std::array<Rational, N> coeffs_;
};

}  // namespace eppflags::exact

#endif  // EPPFLAGS_EXACT_HPP
