#pragma once

#include <cstdint>
#include <vector>

#include "padic/error.hpp"

namespace padic {

using FpVec = std::vector<std::uint32_t>; // residues mod p

// Dense d x d matrix over F_p, row major.
class FpMat {
public:
    FpMat() : p_(2), d_(0) {}
    FpMat(std::uint32_t p, int d) : p_(p), d_(d), a_(static_cast<std::size_t>(d) * d, 0) {}

    static FpMat identity(std::uint32_t p, int d) {
        FpMat m(p, d);
        for (int i = 0; i < d; ++i) m.at(i, i) = 1;
        return m;
    }

    std::uint32_t prime() const { return p_; }
    int dim() const { return d_; }

    std::uint32_t& at(int r, int c) { return a_[static_cast<std::size_t>(r) * d_ + c]; }
    std::uint32_t at(int r, int c) const { return a_[static_cast<std::size_t>(r) * d_ + c]; }

    FpVec apply(const FpVec& x) const {
        FpVec y(static_cast<std::size_t>(d_), 0);
        for (int r = 0; r < d_; ++r) {
            std::uint64_t s = 0;
            for (int c = 0; c < d_; ++c) s += static_cast<std::uint64_t>(at(r, c)) * x[static_cast<std::size_t>(c)];
            y[static_cast<std::size_t>(r)] = static_cast<std::uint32_t>(s % p_);
        }
        return y;
    }

    FpMat mul(const FpMat& o) const {
        FpMat r(p_, d_);
        for (int i = 0; i < d_; ++i)
            for (int k = 0; k < d_; ++k) {
                std::uint64_t aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < d_; ++j)
                    r.at(i, j) = static_cast<std::uint32_t>((r.at(i, j) + aik * o.at(k, j)) % p_);
            }
        return r;
    }

    FpMat transpose() const {
        FpMat r(p_, d_);
        for (int i = 0; i < d_; ++i)
            for (int j = 0; j < d_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    std::uint32_t det() const {
        FpMat m = *this;
        std::uint64_t det = 1;
        for (int col = 0; col < d_; ++col) {
            int pivot = -1;
            for (int r = col; r < d_; ++r)
                if (m.at(r, col) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return 0;
            if (pivot != col) {
                for (int j = 0; j < d_; ++j) std::swap(m.at(pivot, j), m.at(col, j));
                det = (det * (p_ - 1)) % p_;
            }
            det = (det * m.at(col, col)) % p_;
            std::uint64_t inv = mod_pow(m.at(col, col), p_ - 2);
            for (int r = col + 1; r < d_; ++r) {
                std::uint64_t f = (m.at(r, col) * inv) % p_;
                if (f == 0) continue;
                for (int j = col; j < d_; ++j) {
                    std::uint64_t sub = (f * m.at(col, j)) % p_;
                    m.at(r, j) = static_cast<std::uint32_t>((m.at(r, j) + p_ - sub) % p_);
                }
            }
        }
        return static_cast<std::uint32_t>(det);
    }

    FpMat inverse() const {
        FpMat m = *this;
        FpMat inv = identity(p_, d_);
        for (int col = 0; col < d_; ++col) {
            int pivot = -1;
            for (int r = col; r < d_; ++r)
                if (m.at(r, col) != 0) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) fail("degenerate-basis", "matrix is singular mod p");
            if (pivot != col)
                for (int j = 0; j < d_; ++j) {
                    std::swap(m.at(pivot, j), m.at(col, j));
                    std::swap(inv.at(pivot, j), inv.at(col, j));
                }
            std::uint64_t s = mod_pow(m.at(col, col), p_ - 2);
            for (int j = 0; j < d_; ++j) {
                m.at(col, j) = static_cast<std::uint32_t>((m.at(col, j) * s) % p_);
                inv.at(col, j) = static_cast<std::uint32_t>((inv.at(col, j) * s) % p_);
            }
            for (int r = 0; r < d_; ++r) {
                if (r == col || m.at(r, col) == 0) continue;
                std::uint64_t f = m.at(r, col);
                for (int j = 0; j < d_; ++j) {
                    std::uint64_t a = (f * m.at(col, j)) % p_;
                    std::uint64_t b = (f * inv.at(col, j)) % p_;
                    m.at(r, j) = static_cast<std::uint32_t>((m.at(r, j) + p_ - a) % p_);
                    inv.at(r, j) = static_cast<std::uint32_t>((inv.at(r, j) + p_ - b) % p_);
                }
            }
        }
        return inv;
    }

    bool operator==(const FpMat& o) const { return p_ == o.p_ && d_ == o.d_ && a_ == o.a_; }

private:
    std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) const {
        std::uint64_t r = 1;
        b %= p_;
        while (e) {
            if (e & 1) r = (r * b) % p_;
            b = (b * b) % p_;
            e >>= 1;
        }
        return r;
    }

    std::uint32_t p_;
    int d_;
    std::vector<std::uint32_t> a_;
};

inline FpVec fp_add(std::uint32_t p, const FpVec& a, const FpVec& b) {
    FpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
    return r;
}

inline FpVec fp_sub(std::uint32_t p, const FpVec& a, const FpVec& b) {
    FpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + p - b[i]) % p;
    return r;
}

inline FpVec fp_scale(std::uint32_t p, std::uint32_t c, const FpVec& a) {
    FpVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(c) * a[i]) % p);
    return r;
}

inline bool fp_is_zero(const FpVec& a) {
    for (auto x : a)
        if (x != 0) return false;
    return true;
}

} // namespace padic
