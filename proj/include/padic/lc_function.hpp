#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "padic/ball.hpp"
#include "padic/morphism.hpp"
#include "padic/unit_complex.hpp"

namespace padic {

using Complex = std::complex<double>;

// Locally constant complex function with compact support: a dense table of
// values over the level-R subballs of a support ball, zero outside.
class LCFunction {
public:
    LCFunction() = default;
    LCFunction(Ball support, int resolution, std::vector<Complex> cells);

    static LCFunction zero(Ball support, int resolution);
    static LCFunction constant(Ball support, Complex value, int resolution);
    // Omega: the indicator of a ball.
    static LCFunction indicator(Ball support) { return constant(support, {1.0, 0.0}, support.level()); }

    const Ball& support() const { return support_; }
    int resolution() const { return resolution_; }
    const std::vector<Complex>& cells() const { return cells_; }
    std::uint32_t prime() const { return support_.prime(); }
    int dim() const { return support_.dim(); }

    std::uint64_t cell_count() const { return cells_.size(); }
    Ball cell_ball(std::uint64_t idx) const;
    std::uint64_t cell_index(const Ball& C) const;   // C at resolution level inside support
    std::uint64_t cell_index_of_point(const PAdicVec& x) const;

    Complex evaluate(const PAdicVec& x) const;
    // Value on a ball at or below the resolution (constant there); 0 when
    // disjoint from the support.
    Complex value_on(const Ball& C) const;

    // Haar integral over the whole space and over an arbitrary ball.
    Complex integral() const;
    Complex integral_over(const Ball& B) const;

    LCFunction refined(int new_resolution) const;
    LCFunction scaled(Complex c) const;

    bool same_shape(const LCFunction& o) const {
        return support_ == o.support_ && resolution_ == o.resolution_;
    }

private:
    void build_sums();

    Ball support_;
    int resolution_ = 0;
    std::vector<Complex> cells_;
    // sums_[l][node] = raw sum of cell values under the level support+l node
    std::vector<std::vector<Complex>> sums_;
};

LCFunction lc_add(const LCFunction& f, const LCFunction& g);
LCFunction lc_sub(const LCFunction& f, const LCFunction& g);

Complex inner(const LCFunction& f, const LCFunction& g); // integral of f * conj(g)
double l2norm(const LCFunction& f);
// max |f - g| over the common refinement, including support mismatches
double max_abs_diff(const LCFunction& f, const LCFunction& g);

// Multidimensional wavelet index: psi_{gamma n J}.
struct WaveletIndex {
    int gamma = 0;
    // n in (Q_p/Z_p)^d: per coordinate, entry k is the digit at position -(k+1)
    std::vector<std::vector<std::uint32_t>> n;
    FpVec J; // not all zero

    static WaveletIndex from_ball(const Ball& B, const FpVec& J);
};

Ball wavelet_support(const WaveletIndex& idx, std::uint32_t p, int d);
// The wavelet as a table: support level -gamma, resolution -gamma + 1,
// value p^(-d gamma / 2) * chi(p^-1 J . t) on the child of class t.
LCFunction wavelet(const WaveletIndex& idx, std::uint32_t p, int d);

// Phi f = f . phi, realized exactly on the table.
LCFunction pushforward(const Morphism& phi, const LCFunction& f);
// The unitary representation of the parabolic group: the pushforward scaled
// by p^(d gamma / 2) so that the L2 norm is preserved.
LCFunction unitary_action(const Morphism& phi, const LCFunction& f);

} // namespace padic
