#include "doctest.h"

#include <cmath>

#include "padic/oracles.hpp"
#include "padic/operators.hpp"

using namespace padic;

namespace {

Morphism seeded_iso(std::uint32_t p, int d, std::uint64_t seed, SeededMode mode) {
    SeededIsometrySpec spec;
    spec.p = p;
    spec.d = d;
    spec.seed = seed;
    spec.mode = mode;
    return make_isometry(spec);
}

WaveletIndex basic_index(int gamma, FpVec J, int d) {
    WaveletIndex idx;
    idx.gamma = gamma;
    idx.J = std::move(J);
    idx.n.assign(static_cast<std::size_t>(d), {});
    return idx;
}

LCFunction random_span(std::uint32_t p, int d, int count, std::uint64_t seed, int gamma_lo = -1,
                       int gamma_hi = 2) {
    SplitMix64 g(seed);
    LCFunction acc;
    bool first = true;
    for (int i = 0; i < count; ++i) {
        WaveletIndex idx;
        idx.gamma = gamma_lo + static_cast<int>(g.uniform(
                                   static_cast<std::uint64_t>(gamma_hi - gamma_lo + 1)));
        idx.n.assign(static_cast<std::size_t>(d), {});
        for (int c = 0; c < d; ++c)
            if (g.uniform(2) == 0)
                idx.n[static_cast<std::size_t>(c)] = {1 + static_cast<std::uint32_t>(g.uniform(p - 1))};
        std::uint64_t nclasses = 1;
        for (int c = 0; c < d; ++c) nclasses *= p;
        idx.J = class_from_index(p, d, 1 + g.uniform(nclasses - 1));
        double re = 1.0 + static_cast<double>(g.uniform(100)) / 50.0;
        double im = static_cast<double>(g.uniform(100)) / 50.0 - 1.0;
        LCFunction w = wavelet(idx, p, d).scaled({re, im});
        acc = first ? w : lc_add(acc, w);
        first = false;
    }
    return acc;
}

// table+tail kernel covering the chains of the given probe points
KernelSpec make_chain_kernel(std::uint32_t p, double alpha, int tail_from, int table_top,
                             const std::vector<PAdicVec>& probes, std::uint64_t seed) {
    KernelSpec F;
    F.tail_alpha = alpha;
    F.tail_c = {0.7, 0.2};
    F.tail_from = tail_from;
    for (const PAdicVec& y : probes) {
        for (int l = tail_from; l <= table_top; ++l) {
            Ball B = Ball::from_point(y, l);
            std::string key = B.encode();
            if (F.table.count(key)) continue;
            SplitMix64 g(seed ^ fnv1a64(key));
            double ang = static_cast<double>(g.uniform(1000)) / 1000.0 * 6.283185307;
            double env = std::pow(static_cast<double>(p), l * (1.0 + alpha));
            F.table[key] = Complex{env * (1.0 + 0.4 * std::cos(ang)), env * 0.4 * std::sin(ang)};
        }
    }
    return F;
}

std::vector<PAdicVec> window_probe_points(const Window& w, const Morphism& phi, int grid) {
    std::vector<PAdicVec> probes;
    for (const Ball& cell : subballs_at_level(w.ball, grid))
        probes.push_back(phi.apply_point(cell.center(PAdic::kDefaultPrecision + 8)));
    return probes;
}

} // namespace

TEST_SUITE_BEGIN("operators");

TEST_CASE("gamma_p closed form") {
    CHECK(gamma_p(1.0, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(gamma_p(2.0, 3) == doctest::Approx(8.0 * 27.0 / 26.0).epsilon(1e-15));
    double prev = 0.0;
    for (double a = 0.25; a <= 4.0; a += 0.25) {
        double g = gamma_p(a, 5);
        CHECK(g > prev);
        prev = g;
    }
    CHECK_THROWS_WITH_AS(gamma_p(0.0, 3), doctest::Contains("out-of-domain"), Error);
    CHECK_THROWS_WITH_AS(gamma_p(-1.0, 3), doctest::Contains("out-of-domain"), Error);
}

TEST_CASE("wavelet eigenvalue is certified by the quadrature oracle") {
    for (std::uint32_t p : {2u, 3u}) {
        for (int gamma : {0, 1, 2}) {
            for (double alpha : {0.5, 1.0, 2.0}) {
                LCFunction psi = wavelet(basic_index(gamma, {1}, 1), p, 1);
                double ev = wavelet_eigenvalue(p, alpha, gamma);
                // evaluate at a few cells, inside and outside the support
                std::vector<PAdicVec> points;
                for (const Ball& c : subballs_at_level(psi.support(), psi.resolution()))
                    points.push_back(c.center(PAdic::kDefaultPrecision));
                points.push_back(PAdicVec({PAdic::p_power(p, psi.support().level() - 2)}));
                for (const PAdicVec& x : points) {
                    Complex want = ev * psi.evaluate(x);
                    Complex got = oracle::quadrature_vladimirov_at(alpha, psi, x);
                    CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
                }
            }
        }
    }
}

TEST_CASE("eigenvalue consistency across levels") {
    for (double alpha : {0.5, 1.0}) {
        for (int gamma = -2; gamma <= 3; ++gamma)
            CHECK(wavelet_eigenvalue(3, alpha, gamma + 1) ==
                  doctest::Approx(std::pow(3.0, -alpha) * wavelet_eigenvalue(3, alpha, gamma)));
    }
    CHECK(wavelet_eigenvalue(2, 1.0, 1) == doctest::Approx(1.0));
    CHECK(wavelet_eigenvalue(2, 1.0, 0) == doctest::Approx(2.0));
}

TEST_CASE("vladimirov agrees with the quadrature oracle on spans") {
    for (std::uint32_t p : {2u, 3u}) {
        LCFunction f = random_span(p, 1, 4, 1000 + p);
        Window w{f.support().parent(), f.resolution()};
        LCFunction out = vladimirov(1.0, f, w);
        for (std::uint64_t i = 0; i < out.cell_count(); i += 3) {
            PAdicVec x = out.cell_ball(i).center(PAdic::kDefaultPrecision);
            Complex want = oracle::quadrature_vladimirov_at(1.0, f, x);
            CHECK(std::abs(out.cells()[i] - want) <= 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("vladimirov of the zero function is zero and the operator is linear") {
    std::uint32_t p = 3;
    LCFunction z = LCFunction::zero(Ball::unit_ball(p, 1), 1);
    Window w{Ball::unit_ball(p, 1).parent(), 2};
    LCFunction out = vladimirov(1.5, z, w);
    for (const Complex& c : out.cells()) CHECK(std::abs(c) < 1e-15);

    LCFunction f = random_span(p, 1, 3, 71);
    LCFunction g = random_span(p, 1, 3, 72);
    Complex a{0.7, -0.3}, b{-1.1, 0.2};
    LCFunction combo = lc_add(f.scaled(a), g.scaled(b));
    LCFunction lhs = vladimirov(0.5, combo, w);
    LCFunction rhs = lc_add(vladimirov(0.5, f, w).scaled(a), vladimirov(0.5, g, w).scaled(b));
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12);
}

TEST_CASE("vladimirov returns the eigenvalue action on wavelets") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (double alpha : {0.5, 1.0, 2.0}) {
            for (int gamma : {0, 1}) {
                LCFunction psi = wavelet(basic_index(gamma, {1}, 1), p, 1);
                Window w{psi.support(), psi.resolution()};
                LCFunction got = vladimirov(alpha, psi, w);
                LCFunction want = psi.scaled({wavelet_eigenvalue(p, alpha, gamma), 0.0});
                CHECK(max_abs_diff(got, want) <= 1e-10 * std::pow(double(p), alpha + 1));
            }
        }
    }
}

TEST_CASE("kernel_op with the Vladimirov kernel matches vladimirov") {
    for (std::uint32_t p : {2u, 3u}) {
        for (double alpha : {0.5, 1.0}) {
            LCFunction f = random_span(p, 1, 5, 40 + p);
            Window w{f.support().parent().parent(), f.resolution() + 1};
            LCFunction a = vladimirov(alpha, f, w);
            LCFunction b = kernel_op(KernelSpec::vladimirov(p, alpha), f, w);
            CHECK(max_abs_diff(a, b) <= 1e-12 * std::pow(double(p), 3.0));
        }
    }
}

TEST_CASE("kernel_op edge cases") {
    std::uint32_t p = 3;
    LCFunction f = random_span(p, 1, 4, 9);

    // zero kernel gives the zero output
    KernelSpec zero_kernel;
    zero_kernel.tail_c = {0.0, 0.0};
    zero_kernel.tail_alpha = 1.0;
    Window w{f.support().parent(), f.resolution()};
    LCFunction out = kernel_op(zero_kernel, f, w);
    for (const Complex& c : out.cells()) CHECK(std::abs(c) < 1e-15);

    // mean-zero input evaluated outside the support gives exactly zero
    CHECK(std::abs(f.integral()) < 1e-13); // spans of wavelets are mean-zero
    PAdicVec far({PAdic::p_power(p, -5)});
    Complex v = kernel_op_at(view_of(KernelSpec::vladimirov(p, 1.0)), f, far);
    CHECK(std::abs(v) < 1e-13);
}

TEST_CASE("radial kernel_op keeps wavelets as eigenvectors, independent of n") {
    std::uint32_t p = 3;
    double alpha = 1.0;
    // a radial, non-Vladimirov kernel: perturbed power law per level
    KernelView F;
    F.alpha = alpha;
    F.tail_c = {1.0, 0.0};
    F.tail_from = -6;
    F.eval = [p, alpha](const Ball& B) {
        double env = std::pow(static_cast<double>(p), B.level() * (1.0 + alpha));
        if (B.level() < -6) return Complex{env, 0.0};
        return Complex{env * (1.0 + 0.3 * std::sin(static_cast<double>(B.level()))), 0.0};
    };

    std::vector<Complex> multipliers;
    for (std::uint32_t n0 : {0u, 1u, 2u}) {
        WaveletIndex idx = basic_index(0, {1}, 1);
        idx.n = {{n0}};
        // gamma = 0 with n digit at position -1: support center n0/p, level 0
        idx.gamma = 0;
        LCFunction psi = wavelet(idx, p, 1);
        Window w{psi.support(), psi.resolution()};
        LCFunction out = kernel_op(F, psi, w);
        // proportionality cell by cell
        Complex ratio = out.cells()[0] / psi.cells()[0];
        for (std::uint64_t i = 0; i < out.cell_count(); ++i)
            CHECK(std::abs(out.cells()[i] - ratio * psi.cells()[i]) <= 1e-12 * std::abs(ratio));
        multipliers.push_back(ratio);
    }
    for (std::size_t i = 1; i < multipliers.size(); ++i)
        CHECK(std::abs(multipliers[i] - multipliers[0]) <= 1e-12 * std::abs(multipliers[0]));
}

TEST_CASE("vf_op in d = 1 is the kernel operator") {
    for (std::uint32_t p : {2u, 3u}) {
        LCFunction f = random_span(p, 1, 4, 300 + p);
        Window w{f.support().parent(), f.resolution()};
        KernelView F = view_of(KernelSpec::vladimirov(p, 1.0));
        VectorField field = VectorField::seeded(p, 1, 5);
        LCFunction a = vf_op(F, field, f, w);
        LCFunction b = kernel_op(F, f, w);
        CHECK(max_abs_diff(a, b) <= 1e-12 * std::pow(double(p), 2.0));
    }
}

TEST_CASE("vf_op is invariant under scaling of k1") {
    std::uint32_t p = 5;
    int d = 2;
    LCFunction f = random_span(p, d, 3, 77, 0, 1);
    Window w{f.support(), f.resolution()};
    KernelSpec spec = KernelSpec::vladimirov(p, 2.5); // alpha > d - 1
    KernelView F = view_of(spec);

    std::map<std::string, FpVec> base_entries;
    FpVec base_default{1, 2};
    VectorField base = VectorField::from_table(p, d, base_entries, base_default);
    for (std::uint32_t c = 2; c < p; ++c) {
        VectorField scaled = VectorField::from_table(p, d, {}, fp_scale(p, c, base_default));
        LCFunction a = vf_op(F, base, f, w);
        LCFunction b = vf_op(F, scaled, f, w);
        CHECK(max_abs_diff(a, b) == 0.0); // identical member sets, identical sums
    }
}

TEST_CASE("vf_op agrees with the z-space oracle and is completion-independent") {
    for (std::uint32_t p : {2u, 3u}) {
        int d = 2;
        double alpha = 1.5; // > d - 1
        LCFunction f = random_span(p, d, 3, 500 + p, 0, 1);
        KernelView F = view_of(KernelSpec::vladimirov(p, alpha));
        VectorField field = VectorField::seeded(p, d, 21);
        FieldView fv = field.view();
        Window w{f.support(), f.resolution()};
        LCFunction out = vf_op(F, field, f, w);
        const std::uint64_t stride = std::max<std::uint64_t>(1, out.cell_count() / 4);
        for (std::uint64_t i = 0; i < out.cell_count(); i += stride) {
            PAdicVec x = out.cell_ball(i).center(PAdic::kDefaultPrecision);
            Complex o0 = oracle::zspace_vf_at(F, fv, f, x, 0);
            Complex o1 = oracle::zspace_vf_at(F, fv, f, x, 1);
            CHECK(std::abs(o0 - o1) <= 1e-12 * std::max(1.0, std::abs(o0)));
            CHECK(std::abs(out.cells()[i] - o0) <= 1e-10 * std::max(1.0, std::abs(o0)));
        }
    }
}

TEST_CASE("divergent tails are rejected") {
    std::uint32_t p = 3;
    int d = 2;
    LCFunction f = random_span(p, d, 2, 4, 0, 1);
    KernelSpec spec = KernelSpec::vladimirov(p, 0.5); // alpha <= d-1: divergent for d=2
    Window w{f.support(), f.resolution()};
    VectorField field = VectorField::seeded(p, d, 1);
    CHECK_THROWS_WITH_AS(vf_op(view_of(spec), field, f, w), doctest::Contains("divergent-kernel"),
                         Error);
    CHECK_THROWS_WITH_AS(kernel_op(spec, f, w), doctest::Contains("divergent-kernel"), Error);

    KernelSpec bad;
    bad.tail_alpha = -1.0;
    CHECK_THROWS_WITH_AS(view_of(bad), doctest::Contains("divergent-kernel"), Error);
}

TEST_CASE("transform rule Eq. (2)") {
    std::uint32_t p = 3;
    LCFunction f = random_span(p, 1, 4, 17);

    // identity morphism: residual at float noise
    Morphism id = Morphism::identity(p, 1);
    Window wid = preimage_window(id, f);
    KernelView vlad = view_of(KernelSpec::vladimirov(p, 1.0));
    CHECK(verify_transform_rule(id, vlad, f, wid).max_abs_diff <= 1e-12);

    // dilation with the Vladimirov kernel on a wavelet
    LCFunction psi = wavelet(basic_index(0, {1}, 1), p, 1);
    Morphism dil = Morphism::dilation(p, 1, 1);
    CHECK(verify_transform_rule(dil, vlad, psi, preimage_window(dil, psi)).max_abs_diff <= 1e-9);

    // seeded isometry with a table+tail kernel; the window is the preimage of
    // the support region so the probes hit where f lives
    Morphism iso = seeded_iso(p, 1, 9, SeededMode::permutation);
    Window w = preimage_window(iso, f);
    int grid = std::max(w.resolution, f.resolution());
    std::vector<PAdicVec> probes = window_probe_points(w, iso, grid);
    KernelSpec table = make_chain_kernel(p, 1.0, -4, f.resolution() + 2, probes, 5);
    ResidualReport riso = verify_transform_rule(iso, view_of(table), f, w);
    CHECK(riso.max_abs_diff <= 1e-9);
    CHECK(riso.max_abs_value > 1e-6); // the comparison is not vacuous

    // parabolic composition with a table+tail kernel
    Morphism par = compose(iso, Morphism::dilation(p, 1, 1));
    Window wpar = preimage_window(par, f);
    int grid2 = std::max({wpar.resolution, f.resolution(), f.resolution() - par.gamma()});
    KernelSpec table2 = make_chain_kernel(p, 1.0, -4, f.resolution() + 4,
                                          window_probe_points(wpar, par, grid2), 6);
    CHECK(verify_transform_rule(par, view_of(table2), f, wpar).max_abs_diff <= 1e-9);

    // corrupted transport is detected
    ResidualReport rep = verify_transform_rule(iso, view_of(table), f, w, 1e-3);
    CHECK(rep.max_abs_diff > 1e-6);
    // corrupting both sides uniformly keeps the rule intact
    KernelView both = corrupted_view(view_of(table), 1e-3);
    CHECK(verify_transform_rule(iso, both, f, w).max_abs_diff <= 1e-9);
}

TEST_CASE("chain rule for the Vladimirov operator") {
    std::uint32_t p = 2;
    LCFunction f = random_span(p, 1, 4, 23);

    Morphism id = Morphism::identity(p, 1);
    CHECK(verify_chain_rule(id, 1.0, f, preimage_window(id, f)).max_abs_diff <= 1e-12);

    // phi = p^-1 x: gamma = -1, factor p^alpha
    Morphism shrink = make_affine_morphism({PAdic::zero(p), PAdic::p_power(p, -1, 24)});
    CHECK(shrink.gamma() == -1);
    CHECK(verify_chain_rule(shrink, 1.0, f, preimage_window(shrink, f)).max_abs_diff <= 1e-9);

    // random parabolic sweep
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        Morphism par = compose(seeded_iso(p, 1, seed, SeededMode::permutation),
                               Morphism::dilation(p, 1, static_cast<int>(seed % 3) - 1));
        Window w = preimage_window(par, f);
        for (double alpha : {0.5, 1.0, 2.0}) {
            ResidualReport rep = verify_chain_rule(par, alpha, f, w);
            CHECK(rep.max_abs_diff <= 1e-9);
        }
    }
}

TEST_CASE("covariance of pseudodifferential vector fields") {
    // identity case
    {
        std::uint32_t p = 2;
        int d = 2;
        LCFunction f = random_span(p, d, 3, 31, 0, 1);
        Window w{f.support(), f.resolution()};
        KernelView F = view_of(KernelSpec::vladimirov(p, 1.5));
        VectorField field = VectorField::seeded(p, d, 3);
        CHECK(verify_covariance(Morphism::identity(p, d), F, field, f, w).max_abs_diff <= 1e-12);
    }
    // seeded mod-p-affine isometries, d = 2, p = 2 and 3
    for (std::uint32_t p : {2u, 3u}) {
        int d = 2;
        LCFunction f = random_span(p, d, 3, 600 + p, 0, 1);
        KernelView F = view_of(KernelSpec::vladimirov(p, 1.5));
        VectorField field = VectorField::seeded(p, d, 44);
        Morphism phi = seeded_iso(p, d, 71, SeededMode::affine);
        Window w = preimage_window(phi, f, 0);
        ResidualReport rep = verify_covariance(phi, F, field, f, w);
        CHECK(rep.max_abs_diff <= 1e-9);
        CHECK(rep.max_abs_value > 1e-6);
    }
    // d = 1 reduction: the theorem collapses to the isometric case of Eq. (2)
    {
        std::uint32_t p = 3;
        LCFunction f = random_span(p, 1, 4, 90);
        KernelView F = view_of(KernelSpec::vladimirov(p, 1.0));
        VectorField field = VectorField::seeded(p, 1, 2);
        Morphism phi = seeded_iso(p, 1, 5, SeededMode::affine);
        Window w = preimage_window(phi, f);
        ResidualReport cov = verify_covariance(phi, F, field, f, w);
        ResidualReport eq2 = verify_transform_rule(phi, F, f, w);
        CHECK(cov.max_abs_diff <= 1e-9);
        CHECK(eq2.max_abs_diff <= 1e-9);
    }
}

TEST_SUITE_END();
