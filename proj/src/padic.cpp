#include "padic/padic.hpp"

#include <algorithm>
#include <cmath>

namespace padic {

namespace {

constexpr const char* kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

int digit_from_char(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
    return -1;
}

long long mod_inverse(long long a, long long m) {
    long long g = m, x = 0, x1 = 1, a1 = a % m;
    while (a1 != 0) {
        long long q = g / a1;
        g -= q * a1;
        std::swap(g, a1);
        x -= q * x1;
        std::swap(x, x1);
    }
    if (g != 1) fail("not-a-unit", "no modular inverse");
    return ((x % m) + m) % m;
}

} // namespace

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

void PAdic::normalize() {
    std::size_t lo = 0;
    while (lo < digits_.size() && digits_[lo] == 0) ++lo;
    if (lo == digits_.size()) {
        digits_.clear();
        return;
    }
    if (lo > 0) {
        digits_.erase(digits_.begin(), digits_.begin() + static_cast<long>(lo));
        v_ += static_cast<int>(lo);
    }
    while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
}

void PAdic::check_same_prime(const PAdic& a, const PAdic& b) {
    if (a.p_ != b.p_) fail("prime-mismatch", "operands have different primes");
}

PAdic PAdic::zero(std::uint32_t p, int precision) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    (void)precision;
    return PAdic(p, 0, {}, kExactLimit);
}

PAdic PAdic::one(std::uint32_t p, int precision) {
    return from_integer(p, 1, precision);
}

PAdic PAdic::from_integer(std::uint32_t p, long long value, int precision) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    if (value == 0) return zero(p, precision);
    bool negative = value < 0;
    unsigned long long u = negative ? -static_cast<unsigned long long>(value)
                                    : static_cast<unsigned long long>(value);
    std::vector<std::uint32_t> digits;
    int v = 0;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
    while (u != 0 && static_cast<int>(digits.size()) < precision) {
        digits.push_back(static_cast<std::uint32_t>(u % p));
        u /= p;
    }
    PAdic r(p, v, std::move(digits), std::min(v + precision, kExactLimit));
    r.normalize();
    return negative ? r.neg() : r;
}

PAdic PAdic::p_power(std::uint32_t p, int k, int precision) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    return PAdic(p, k, {1}, std::min(k + precision, kExactLimit));
}

PAdic PAdic::from_digits(std::uint32_t p, int v, std::vector<std::uint32_t> digits, int known_to) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    for (std::uint32_t d : digits)
        if (d >= p) fail("malformed-literal", "digit out of range");
    PAdic r(p, v, std::move(digits), std::min(known_to, kExactLimit));
    r.normalize();
    return r;
}

double PAdic::norm() const {
    if (is_zero()) return 0.0;
    return std::pow(static_cast<double>(p_), -static_cast<double>(v_));
}

PAdic PAdic::add(const PAdic& o) const {
    check_same_prime(*this, o);
    int limit = std::min(limit_, o.limit_);
    if (is_zero() && o.is_zero()) return PAdic(p_, 0, {}, limit);
    if (is_zero() || o.is_zero()) {
        const PAdic& nz = is_zero() ? o : *this;
        if (nz.v_ >= limit) return PAdic(p_, 0, {}, limit);
        std::vector<std::uint32_t> d = nz.digits_;
        if (nz.v_ + static_cast<int>(d.size()) > limit)
            d.resize(static_cast<std::size_t>(limit - nz.v_));
        PAdic r(p_, nz.v_, std::move(d), limit);
        r.normalize();
        return r;
    }
    int vmin = std::min(v_, o.v_);
    if (limit <= vmin) return PAdic(p_, 0, {}, limit);
    int extent = std::max(v_ + static_cast<int>(digits_.size()),
                          o.v_ + static_cast<int>(o.digits_.size()));
    int hi = std::min(limit, extent + 1); // +1 for a possible carry
    std::vector<std::uint32_t> out(static_cast<std::size_t>(hi - vmin), 0);
    std::uint64_t carry = 0;
    for (int pos = vmin; pos < hi; ++pos) {
        std::uint64_t s = carry + digit_at(pos) + o.digit_at(pos);
        out[static_cast<std::size_t>(pos - vmin)] = static_cast<std::uint32_t>(s % p_);
        carry = s / p_;
    }
    PAdic r(p_, vmin, std::move(out), limit);
    r.normalize();
    return r;
}

PAdic PAdic::neg() const {
    if (is_zero()) return *this;
    // The complement fills the whole window with digits.
    std::vector<std::uint32_t> out(static_cast<std::size_t>(limit_ - v_), 0);
    out[0] = p_ - digits_[0];
    for (int pos = v_ + 1; pos < limit_; ++pos)
        out[static_cast<std::size_t>(pos - v_)] = p_ - 1 - digit_at(pos);
    PAdic r(p_, v_, std::move(out), limit_);
    r.normalize();
    return r;
}

PAdic PAdic::mul(const PAdic& o) const {
    check_same_prime(*this, o);
    if (is_zero() || o.is_zero()) {
        // O(p^a) * y is known modulo p^(a + v(y)).
        long long lim = std::min(is_zero() ? limit_ : kExactLimit,
                                 o.is_zero() ? o.limit_ : kExactLimit);
        if (!is_zero()) lim += v_;
        if (!o.is_zero()) lim += o.v_;
        lim = std::min<long long>(std::max<long long>(lim, 1), kExactLimit);
        return PAdic(p_, 0, {}, static_cast<int>(lim));
    }
    int v = v_ + o.v_;
    long long width = std::min(static_cast<long long>(limit_) - v_,
                               static_cast<long long>(o.limit_) - o.v_);
    long long store = std::min<long long>(width, static_cast<long long>(digits_.size()) +
                                                     static_cast<long long>(o.digits_.size()) + 1);
    std::size_t n = static_cast<std::size_t>(store);
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < digits_.size() && i < n; ++i) {
        if (digits_[i] == 0) continue;
        std::uint64_t di = digits_[i];
        std::size_t jmax = std::min(o.digits_.size(), n - i);
        for (std::size_t j = 0; j < jmax; ++j)
            acc[i + j] += di * o.digits_[j];
    }
    std::vector<std::uint32_t> out(n, 0);
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t s = acc[k] + carry;
        out[k] = static_cast<std::uint32_t>(s % p_);
        carry = s / p_;
    }
    long long lim = std::min<long long>(static_cast<long long>(v) + width, kExactLimit);
    PAdic r(p_, v, std::move(out), static_cast<int>(lim));
    r.normalize();
    return r;
}

PAdic PAdic::invert_unit() const {
    if (is_zero() || v_ != 0) fail("not-a-unit", "invert_unit requires norm(x) == 1");
    const int n = limit_;
    long long inv0 = mod_inverse(digits_[0], p_);
    PAdic y = from_digits(p_, 0, {static_cast<std::uint32_t>(inv0)}, 1);
    PAdic two = from_integer(p_, 2, n);
    int prec = 1;
    // Newton iteration y <- y (2 - x y); doubles the number of exact digits.
    while (prec < n) {
        prec = std::min(2 * prec, n);
        PAdic yw = y.is_zero() ? y : PAdic(p_, 0, y.digits_, prec);
        PAdic t = mul(yw);
        PAdic e = two.sub(t);
        y = yw.mul(e);
    }
    if (!y.is_zero()) y.limit_ = n;
    return y;
}

PAdic PAdic::mul_pow_p(int k) const {
    long long lim = std::min<long long>(static_cast<long long>(limit_) + k, kExactLimit);
    if (is_zero()) return PAdic(p_, 0, {}, static_cast<int>(std::max<long long>(lim, 1)));
    return PAdic(p_, v_ + k, digits_, static_cast<int>(lim));
}

PAdic PAdic::with_window(int precision) const {
    if (is_zero()) return PAdic(p_, 0, {}, std::min(precision, kExactLimit));
    std::vector<std::uint32_t> d = digits_;
    if (static_cast<int>(d.size()) > precision) d.resize(static_cast<std::size_t>(precision));
    PAdic r(p_, v_, std::move(d), std::min(v_ + precision, kExactLimit));
    r.normalize();
    return r;
}

UnitComplex PAdic::character() const {
    if (is_zero() || v_ >= 0) return UnitComplex::one();
    int k = -v_;
    long long den = 1;
    for (int i = 0; i < k; ++i) {
        if (den > (1ll << 62) / p_) fail("phase-overflow", "character denominator overflow");
        den *= p_;
    }
    long long num = 0;
    long long scale = 1;
    for (int pos = v_; pos < 0; ++pos) {
        num += static_cast<long long>(digit_at(pos)) * scale;
        scale *= p_;
    }
    return UnitComplex::from_phase(num, den);
}

std::string PAdic::format() const {
    if (is_zero()) return "0";
    if (p_ > 36) fail("unsupported-radix", "text I/O supports p <= 36");
    int hi = v_ + static_cast<int>(digits_.size());
    std::string ints;
    for (int pos = 0; pos < hi; ++pos) ints.push_back(kDigitChars[digit_at(pos)]);
    while (ints.size() > 1 && ints.back() == '0') ints.pop_back();
    std::string out = ints;
    if (v_ < 0) {
        std::string frac;
        for (int pos = -1; pos >= v_; --pos) frac.push_back(kDigitChars[digit_at(pos)]);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out += ".";
        out += frac;
    }
    if (out.empty()) out = "0";
    return out;
}

PAdic PAdic::parse(const std::string& text, std::uint32_t p, int precision) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    if (p > 36) fail("unsupported-radix", "text I/O supports p <= 36");
    if (precision < 1) fail("malformed-literal", "precision must be >= 1");
    std::string s = text;
    bool negative = false;
    if (!s.empty() && s[0] == '-') {
        negative = true;
        s = s.substr(1);
    }
    if (s.empty()) fail("malformed-literal", "empty literal");
    auto dot = s.find('.');
    if (dot != std::string::npos && s.find('.', dot + 1) != std::string::npos)
        fail("malformed-literal", "more than one radix point");
    std::string int_part = (dot == std::string::npos) ? s : s.substr(0, dot);
    std::string frac_part = (dot == std::string::npos) ? "" : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
        fail("malformed-literal", "literal has no digits");

    int lo = -static_cast<int>(frac_part.size());
    std::vector<std::uint32_t> digits(int_part.size() + frac_part.size(), 0);
    auto set_digit = [&](int pos, char c) {
        int d = digit_from_char(c);
        if (d < 0 || static_cast<std::uint32_t>(d) >= p)
            fail("malformed-literal",
                 std::string("digit '") + c + "' not valid in base " + std::to_string(p));
        digits[static_cast<std::size_t>(pos - lo)] = static_cast<std::uint32_t>(d);
    };
    for (std::size_t i = 0; i < frac_part.size(); ++i)
        set_digit(-1 - static_cast<int>(i), frac_part[i]);
    for (std::size_t i = 0; i < int_part.size(); ++i)
        set_digit(static_cast<int>(i), int_part[i]);

    PAdic r(p, lo, std::move(digits), kExactLimit);
    r.normalize();
    if (r.is_zero()) return PAdic(p, 0, {}, kExactLimit);
    r.limit_ = std::min(r.v_ + precision, kExactLimit);
    if (static_cast<int>(r.digits_.size()) > precision)
        r.digits_.resize(static_cast<std::size_t>(precision));
    r.normalize();
    return negative ? r.neg() : r;
}

PAdicVec::PAdicVec(std::vector<PAdic> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) fail("bad-dimension", "vector needs at least one component");
    for (const auto& c : comps_)
        if (c.prime() != comps_[0].prime()) fail("prime-mismatch", "mixed primes in vector");
}

PAdicVec PAdicVec::zero(std::uint32_t p, int d, int precision) {
    std::vector<PAdic> comps(static_cast<std::size_t>(d), PAdic::zero(p, precision));
    return PAdicVec(std::move(comps));
}

bool PAdicVec::is_zero() const {
    for (const auto& c : comps_)
        if (!c.is_zero()) return false;
    return true;
}

std::optional<int> PAdicVec::norm_exponent() const {
    std::optional<int> best;
    for (const auto& c : comps_) {
        auto e = c.norm_exponent();
        if (e && (!best || *e > *best)) best = e;
    }
    return best;
}

double PAdicVec::norm() const {
    auto e = norm_exponent();
    if (!e) return 0.0;
    return std::pow(static_cast<double>(prime()), static_cast<double>(*e));
}

int PAdicVec::known_to() const {
    int lim = PAdic::kExactLimit;
    for (const auto& c : comps_) lim = std::min(lim, c.known_to());
    return lim;
}

PAdicVec PAdicVec::add(const PAdicVec& o) const {
    if (dim() != o.dim()) fail("bad-dimension", "vector dimension mismatch");
    std::vector<PAdic> out;
    out.reserve(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) out.push_back(comps_[i].add(o.comps_[i]));
    return PAdicVec(std::move(out));
}

PAdicVec PAdicVec::neg() const {
    std::vector<PAdic> out;
    out.reserve(comps_.size());
    for (const auto& c : comps_) out.push_back(c.neg());
    return PAdicVec(std::move(out));
}

PAdicVec PAdicVec::scale(const PAdic& c) const {
    std::vector<PAdic> out;
    out.reserve(comps_.size());
    for (const auto& x : comps_) out.push_back(x.mul(c));
    return PAdicVec(std::move(out));
}

PAdicVec PAdicVec::mul_pow_p(int k) const {
    std::vector<PAdic> out;
    out.reserve(comps_.size());
    for (const auto& x : comps_) out.push_back(x.mul_pow_p(k));
    return PAdicVec(std::move(out));
}

} // namespace padic
