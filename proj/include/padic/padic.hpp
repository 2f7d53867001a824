#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/error.hpp"
#include "padic/unit_complex.hpp"

namespace padic {

// Exact finite-precision p-adic scalar.
//
// A value is an exact base-p expansion sum d_i * p^(v+i) known modulo
// p^known_to(): every stored digit is exact, positions in [v+len, known_to)
// are exactly zero, and positions at or above known_to() have been truncated
// away by the window rule.  Arithmetic keeps the common absolute window of
// its operands and drops carries beyond it; it never widens a window.
//
// Digit order is least significant first, in storage and in text I/O.
// Text grammar (base p, digit characters 0-9 then a-z):
//   literal  = [ "-" ] digits [ "." digits ]
// Digits before "." sit at positions 0,1,2,... reading left to right; digits
// after "." sit at positions -1,-2,... reading left to right.  Example for
// p=2: ".1" is 1/2 (norm 2), "11" is 3.  A leading "-" applies p-adic
// negation to the parsed value; format() never emits it.
class PAdic {
public:
    static constexpr int kDefaultPrecision = 16;
    // Window bound used for exactly-known values (canonical ball centers,
    // literal zero).  Every digit loop in the library is bounded by it.
    static constexpr int kExactLimit = 96;

    PAdic() : p_(2), v_(0), limit_(kExactLimit) {}

    static PAdic zero(std::uint32_t p, int precision = kDefaultPrecision);
    static PAdic one(std::uint32_t p, int precision = kDefaultPrecision);
    static PAdic from_integer(std::uint32_t p, long long value, int precision = kDefaultPrecision);
    // p^k
    static PAdic p_power(std::uint32_t p, int k, int precision = kDefaultPrecision);
    // Exact value from explicit digits; digits[i] sits at position v+i.
    static PAdic from_digits(std::uint32_t p, int v, std::vector<std::uint32_t> digits,
                             int known_to = kExactLimit);

    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return digits_.empty(); }
    bool is_unit() const { return !is_zero() && v_ == 0; }

    // Valuation; nullopt encodes +infinity (the zero value).
    std::optional<int> valuation() const {
        if (is_zero()) return std::nullopt;
        return v_;
    }

    // norm = p^(-v); exact exponent form, nullopt for zero.
    std::optional<int> norm_exponent() const {
        if (is_zero()) return std::nullopt;
        return -v_;
    }
    double norm() const;

    // Absolute position below which the value is exactly known.
    int known_to() const { return limit_; }
    int precision() const { return is_zero() ? limit_ : limit_ - v_; }

    // Digit at an absolute position (0 outside the stored range).
    std::uint32_t digit_at(int pos) const {
        if (is_zero() || pos < v_) return 0;
        std::size_t i = static_cast<std::size_t>(pos - v_);
        return i < digits_.size() ? digits_[i] : 0;
    }

    const std::vector<std::uint32_t>& digits() const { return digits_; }
    int lowest_position() const { return v_; }

    PAdic add(const PAdic& o) const;
    PAdic neg() const;
    PAdic sub(const PAdic& o) const { return add(o.neg()); }
    PAdic mul(const PAdic& o) const;
    // Multiplicative inverse of a unit, exact to the value's window.
    PAdic invert_unit() const;
    // x * p^k (exact shift).
    PAdic mul_pow_p(int k) const;
    // Re-anchor the window of an exact value (known_to == kExactLimit only).
    PAdic with_window(int precision) const;

    // Additive character chi(x) = exp(2 pi i sum_{j<0} d_j p^j).
    UnitComplex character() const;

    // Equality of represented expansions (windows are not compared).
    bool operator==(const PAdic& o) const {
        return p_ == o.p_ && digits_ == o.digits_ && (digits_.empty() || v_ == o.v_);
    }
    bool operator!=(const PAdic& o) const { return !(*this == o); }

    std::string format() const;
    static PAdic parse(const std::string& text, std::uint32_t p,
                       int precision = kDefaultPrecision);

private:
    PAdic(std::uint32_t p, int v, std::vector<std::uint32_t> digits, int limit)
        : p_(p), v_(v), digits_(std::move(digits)), limit_(limit) {}

    void normalize();
    static void check_same_prime(const PAdic& a, const PAdic& b);

    std::uint32_t p_;
    int v_;                             // position of digits_[0]
    std::vector<std::uint32_t> digits_; // front()!=0 and back()!=0 unless empty
    int limit_;                         // known modulo p^limit_
};

// d-dimensional vector of p-adic scalars with the max norm.
class PAdicVec {
public:
    PAdicVec() = default;
    explicit PAdicVec(std::vector<PAdic> comps);
    static PAdicVec zero(std::uint32_t p, int d, int precision = PAdic::kDefaultPrecision);

    int dim() const { return static_cast<int>(comps_.size()); }
    std::uint32_t prime() const { return comps_.at(0).prime(); }
    const PAdic& operator[](int i) const { return comps_.at(static_cast<std::size_t>(i)); }
    const std::vector<PAdic>& components() const { return comps_; }

    bool is_zero() const;
    std::optional<int> norm_exponent() const; // nullopt for the zero vector
    double norm() const;
    int known_to() const;

    PAdicVec add(const PAdicVec& o) const;
    PAdicVec neg() const;
    PAdicVec sub(const PAdicVec& o) const { return add(o.neg()); }
    PAdicVec scale(const PAdic& c) const;
    PAdicVec mul_pow_p(int k) const;

    bool operator==(const PAdicVec& o) const { return comps_ == o.comps_; }
    bool operator!=(const PAdicVec& o) const { return !(*this == o); }

private:
    std::vector<PAdic> comps_;
};

// Free-function spellings used throughout the library.
inline PAdic add(const PAdic& a, const PAdic& b) { return a.add(b); }
inline PAdic neg(const PAdic& a) { return a.neg(); }
inline PAdic mul(const PAdic& a, const PAdic& b) { return a.mul(b); }
inline PAdic invert_unit(const PAdic& a) { return a.invert_unit(); }
inline UnitComplex character(const PAdic& a) { return a.character(); }
inline double norm(const PAdic& a) { return a.norm(); }
inline double norm(const PAdicVec& a) { return a.norm(); }
inline std::string format_padic(const PAdic& a) { return a.format(); }
inline PAdic parse_padic(const std::string& text, std::uint32_t p,
                         int precision = PAdic::kDefaultPrecision) {
    return PAdic::parse(text, p, precision);
}

bool is_prime(std::uint32_t p);

} // namespace padic
