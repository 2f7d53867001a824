#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "padic/lc_function.hpp"

namespace padic {

// One element of the parabolic-orbit family attached to a ball (d = 1):
// the function taking value sqrt(p)^level * zeta_p^perm[t] on the child of
// class t.  The p! of these per ball make up the orbit of the mother wavelet.
struct OrbitFunction {
    Ball ball;
    std::vector<std::uint32_t> perm; // size p, a bijection on root indices

    // value magnitudes are sqrt(p)^half_exponent()
    int half_exponent() const { return ball.level(); }
    LCFunction materialize() const;
};

// The p! orbit functions of a ball, permutations in lexicographic order.
std::vector<OrbitFunction> ball_orbit_enumeration(const Ball& B);
std::vector<LCFunction> ball_orbit_functions(const Ball& B);

// Exact inner product <1_W, psi> for an indicator of a ball W lying inside a
// single child of psi's ball: returns (h, m) with value sqrt(p)^h * zeta_p^m.
// Empty when W spans several children (then the product needs the table path).
std::optional<std::pair<int, int>> orbit_inner_indicator_exact(const OrbitFunction& psi,
                                                               const Ball& W);

struct FramePartials {
    double partial = 0.0;
    double tail_bound = 0.0;
    // per paper-gamma (diameter p^gamma) partial contributions
    std::vector<std::pair<int, double>> per_gamma;
};

// Sum of |<g, psi>|^2 over all orbit functions attached to balls that
// intersect supp(g) and have diameter at most p^gamma_max, plus the
// closed-form geometric bound for the remaining tail.
FramePartials frame_partial_sum(const LCFunction& g, int gamma_max);

} // namespace padic
