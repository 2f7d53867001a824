#pragma once

// Independent brute-force oracles used to certify the operators before they
// are trusted.  They deliberately avoid the shell-grouping code paths of the
// production operators: integration is brute-force cell by cell at a refined
// resolution, with explicit geometric tails.  Nothing in the production
// operators calls into this header.

#include <cmath>
#include <complex>

#include "padic/operators.hpp"

namespace padic::oracle {

// Brute-force Vladimirov integral at a point, d = 1: every level-(R+refine)
// cell of a ball two levels above sup(x, supp f) contributes
// (f(x) - f(y_c)) |x - y_c|^-(1+alpha) times its measure; the region beyond
// holds no mass of f, so the remaining sum is geometric.
inline Complex quadrature_vladimirov_at(double alpha, const LCFunction& f, const PAdicVec& x,
                                        int refine = 4) {
    const std::uint32_t p = f.prime();
    const double pd = static_cast<double>(p);
    const int R = f.resolution();
    const Complex fx = f.evaluate(x);

    Ball bx = Ball::from_point(x, f.support().level());
    const int lA = sup(bx, f.support()).level();
    const int Lbig = lA - 2;
    Ball big = Ball::from_point(x, Lbig);
    const int Rq = R + refine;
    const double cell_measure = std::pow(pd, -Rq);

    Complex acc{0.0, 0.0};
    for (const Ball& cell : subballs_at_level(big, Rq)) {
        if (cell.contains_point(x)) continue; // integrand vanishes there exactly
        PAdicVec y = cell.center(PAdic::kDefaultPrecision);
        int e = *x.sub(y).norm_exponent(); // |x - y| = p^e, constant on the cell
        double weight = std::pow(pd, -e * (1.0 + alpha));
        acc += (fx - f.evaluate(y)) * weight * cell_measure;
    }
    // |x - y| > diam(big): f(y) = 0 there
    if (fx != Complex{0.0, 0.0})
        acc += fx * (1.0 - 1.0 / pd) * std::pow(pd, (Lbig - 1) * alpha) /
               (1.0 - std::pow(pd, -alpha));
    return gamma_p(alpha, p) * acc;
}

// A concrete completion basis {k_1, ..., k_d} for the part-3 z-domain:
// |k_1| = 1 realizing the class k1, |k_l| = 1/p, with the mod-p generation
// condition.  Two variants exercise the well-definedness of the operator.
inline std::vector<PAdicVec> completion_basis(std::uint32_t p, int d, const FpVec& k1_class,
                                              int variant) {
    int pivot = -1;
    for (int i = 0; i < d; ++i)
        if (k1_class[static_cast<std::size_t>(i)] != 0) {
            pivot = i;
            break;
        }
    if (pivot < 0) fail("invalid-direction", "k1 class must be nonzero");
    std::vector<PAdicVec> basis;
    std::vector<PAdic> k1;
    for (int i = 0; i < d; ++i)
        k1.push_back(PAdic::from_digits(p, 0, {k1_class[static_cast<std::size_t>(i)]}));
    basis.emplace_back(std::move(k1));
    for (int j = 0; j < d; ++j) {
        if (j == pivot) continue;
        std::vector<PAdic> kl(static_cast<std::size_t>(d), PAdic::zero(p));
        kl[static_cast<std::size_t>(j)] = PAdic::p_power(p, 1);
        if (variant == 1) {
            // add p * k1 so that p^-1 k_l = e_j + k1 mod p; still generating
            for (int i = 0; i < d; ++i)
                kl[static_cast<std::size_t>(i)] = kl[static_cast<std::size_t>(i)].add(
                    basis[0][i].mul_pow_p(1));
        }
        basis.emplace_back(std::move(kl));
    }
    return basis;
}

// Brute-force pseudodifferential vector field at a point: enumerate the
// z-domain of each level against an explicit completion basis.
inline Complex zspace_vf_at(const KernelView& F, const FieldView& field, const LCFunction& f,
                            const PAdicVec& x, int variant) {
    const std::uint32_t p = f.prime();
    const int d = f.dim();
    const double pd = static_cast<double>(p);
    const int R = f.resolution();
    const Complex fx = f.evaluate(x);

    Ball bx = Ball::from_point(x, f.support().level());
    const int lA = sup(bx, f.support()).level();
    const int lo = std::min(lA, F.tail_from);

    Complex acc{0.0, 0.0};
    for (int l = lo; l <= R - 1; ++l) {
        Ball B = Ball::from_point(x, l);
        FpVec k1 = field(B);
        std::vector<PAdicVec> basis = completion_basis(p, d, k1, variant);
        const int zdepth = R - l; // z-cells land inside single f-cells
        std::uint64_t per = 1;
        for (int i = 0; i < zdepth; ++i) per *= p;
        const double zcell = std::pow(pd, -static_cast<double>(d) * (l + zdepth));
        Complex level_acc{0.0, 0.0};
        std::uint64_t total = 1;
        for (int i = 0; i < d; ++i) total *= per;
        for (std::uint64_t n = 0; n < total; ++n) {
            std::uint64_t rem = n;
            PAdicVec y = x;
            bool on_sphere = false;
            for (int i = 0; i < d; ++i) {
                std::uint64_t zi = rem % per;
                rem /= per;
                std::vector<std::uint32_t> dg(static_cast<std::size_t>(zdepth), 0);
                std::uint64_t t = zi;
                for (int k = 0; k < zdepth; ++k) {
                    dg[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(t % p);
                    t /= p;
                }
                if (i == 0) {
                    if (dg[0] == 0) break; // |z_1| must be exactly p^-l
                    on_sphere = true;
                }
                PAdic z = PAdic::from_digits(p, l, dg, l + zdepth + 8);
                y = y.add(basis[static_cast<std::size_t>(i)].scale(z));
            }
            if (!on_sphere) continue;
            level_acc += (fx - f.evaluate(y)) * zcell;
        }
        acc += F.eval(B) * level_acc;
    }
    if (fx != Complex{0.0, 0.0}) {
        const double e = 1.0 + F.alpha - d;
        acc += fx * (1.0 - 1.0 / pd) * F.tail_c * std::pow(pd, (lo - 1) * e) /
               (1.0 - std::pow(pd, -e));
    }
    return acc;
}

} // namespace padic::oracle
