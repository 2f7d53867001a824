#include "padic/frame.hpp"

#include <algorithm>
#include <cmath>

namespace padic {

LCFunction OrbitFunction::materialize() const {
    const std::uint32_t p = ball.prime();
    const double mag = std::pow(static_cast<double>(p), ball.level() / 2.0);
    std::vector<Complex> cells(p);
    for (std::uint32_t t = 0; t < p; ++t)
        cells[t] = UnitComplex::root_of_unity(p, perm[t]).value() * mag;
    return LCFunction(ball, ball.level() + 1, std::move(cells));
}

std::vector<OrbitFunction> ball_orbit_enumeration(const Ball& B) {
    if (B.dim() != 1) fail("unsupported-dimension", "orbit functions are one-dimensional");
    const std::uint32_t p = B.prime();
    std::vector<std::uint32_t> perm(p);
    for (std::uint32_t i = 0; i < p; ++i) perm[i] = i;
    std::vector<OrbitFunction> out;
    do {
        out.push_back({B, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<LCFunction> ball_orbit_functions(const Ball& B) {
    std::vector<LCFunction> out;
    for (const OrbitFunction& f : ball_orbit_enumeration(B)) out.push_back(f.materialize());
    return out;
}

std::optional<std::pair<int, int>> orbit_inner_indicator_exact(const OrbitFunction& psi,
                                                               const Ball& W) {
    const Ball& B = psi.ball;
    if (!B.contains(W) || W.level() < B.level() + 1) return std::nullopt;
    const std::uint32_t p = B.prime();
    // W sits inside the child of class t*: <1_W, psi> = conj(value) * m(W)
    std::uint32_t t = W.center_digit(0, B.level());
    int m = static_cast<int>((p - psi.perm[t]) % p);           // conjugate root
    int h = B.level() - 2 * W.level();                         // sqrt(p)^L * p^(-Lw)
    return std::make_pair(h, m);
}

FramePartials frame_partial_sum(const LCFunction& g, int gamma_max) {
    if (g.dim() != 1) fail("unsupported-dimension", "the frame construction is one-dimensional");
    const std::uint32_t p = g.prime();
    const Ball S = g.support();
    if (gamma_max < 1 - S.level())
        fail("bad-level", "gamma_max must reach beyond the support of g");

    FramePartials out;
    std::vector<Ball> balls;
    // ancestors of supp(g) with diameter up to p^gamma_max
    Ball cur = S;
    while (cur.level() > -gamma_max) {
        cur = cur.parent();
        balls.push_back(cur);
    }
    // subballs of supp(g) down to one level above the resolution
    for (int L = S.level(); L < g.resolution(); ++L)
        for (const Ball& b : subballs_at_level(S, L)) balls.push_back(b);

    std::map<int, double> per_gamma;
    for (const Ball& B : balls) {
        // <g, psi> = sum_t conj(value_t) integral_{child_t} g
        std::vector<Complex> child_integrals;
        child_integrals.reserve(p);
        for (const Ball& ch : B.children()) child_integrals.push_back(g.integral_over(ch));
        const double mag = std::pow(static_cast<double>(p), B.level() / 2.0);
        std::vector<Complex> roots(p);
        for (std::uint32_t m = 0; m < p; ++m)
            roots[m] = std::conj(UnitComplex::root_of_unity(p, m).value()) * mag;
        std::vector<std::uint32_t> perm(p);
        for (std::uint32_t i = 0; i < p; ++i) perm[i] = i;
        double ball_sum = 0.0;
        do {
            Complex acc{0.0, 0.0};
            for (std::uint32_t t = 0; t < p; ++t) acc += roots[perm[t]] * child_integrals[t];
            ball_sum += std::norm(acc);
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.partial += ball_sum;
        per_gamma[-B.level()] += ball_sum;
    }
    out.per_gamma.assign(per_gamma.begin(), per_gamma.end());

    // tail: balls of diameter p^gamma, gamma > gamma_max, hold supp(g) inside
    // a single child, so |<g, psi>| = p^(-gamma/2) |integral g| and the sum of
    // p! such squares per level is geometric
    double factorial = 1.0;
    for (std::uint32_t i = 2; i <= p; ++i) factorial *= i;
    double total = std::norm(g.integral());
    out.tail_bound = factorial * total * std::pow(static_cast<double>(p), -gamma_max) /
                     (static_cast<double>(p) - 1.0);
    return out;
}

} // namespace padic
