#pragma once

#include <complex>
#include <cstdint>
#include <numeric>

#include "padic/error.hpp"

namespace padic {

// Unit-modulus complex number with an exact rational phase m/den (mod 1).
// Phase arithmetic is exact integer arithmetic; a double-precision complex
// value is produced only on demand.
class UnitComplex {
public:
    UnitComplex() : num_(0), den_(1) {}

    static UnitComplex one() { return UnitComplex(); }

    // exp(2*pi*i * num/den)
    static UnitComplex from_phase(long long num, long long den) {
        if (den <= 0) fail("phase-overflow", "phase denominator must be positive");
        UnitComplex u;
        u.num_ = num;
        u.den_ = den;
        u.reduce();
        return u;
    }

    static UnitComplex root_of_unity(long long order, long long index) {
        return from_phase(index, order);
    }

    long long phase_num() const { return num_; }
    long long phase_den() const { return den_; }

    UnitComplex operator*(const UnitComplex& o) const {
        long long g = std::gcd(den_, o.den_);
        long long scale = o.den_ / g;
        if (den_ > (1ll << 62) / scale) fail("phase-overflow", "phase denominator overflow");
        long long den = den_ * scale;
        __int128 n = static_cast<__int128>(num_) * scale +
                     static_cast<__int128>(o.num_) * (den_ / g);
        long long num = static_cast<long long>(n % den);
        UnitComplex u;
        u.num_ = num;
        u.den_ = den;
        u.reduce();
        return u;
    }

    UnitComplex conj() const {
        UnitComplex u;
        u.num_ = (num_ == 0) ? 0 : den_ - num_;
        u.den_ = den_;
        u.reduce();
        return u;
    }

    UnitComplex pow(long long e) const {
        __int128 n = static_cast<__int128>(num_) * (e % den_);
        __int128 m = n % den_;
        if (m < 0) m += den_;
        UnitComplex u;
        u.num_ = static_cast<long long>(m);
        u.den_ = den_;
        u.reduce();
        return u;
    }

    bool is_one() const { return num_ == 0; }

    bool operator==(const UnitComplex& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const UnitComplex& o) const { return !(*this == o); }

    std::complex<double> value() const {
        const double t = 2.0 * 3.14159265358979323846 * (static_cast<double>(num_) / static_cast<double>(den_));
        return {std::cos(t), std::sin(t)};
    }

private:
    void reduce() {
        num_ %= den_;
        if (num_ < 0) num_ += den_;
        long long g = std::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_ == 0) den_ = 1;
    }

    long long num_; // in [0, den)
    long long den_;
};

} // namespace padic
