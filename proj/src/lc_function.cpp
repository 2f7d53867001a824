#include "padic/lc_function.hpp"

#include <algorithm>
#include <cmath>

namespace padic {

LCFunction::LCFunction(Ball support, int resolution, std::vector<Complex> cells)
    : support_(std::move(support)), resolution_(resolution), cells_(std::move(cells)) {
    if (resolution_ < support_.level())
        fail("bad-level", "resolution must refine the support level");
    std::uint64_t want = 1;
    for (int l = support_.level(); l < resolution_; ++l) want *= support_.child_count();
    if (cells_.size() != want)
        fail("missing-cells", "table must cover exactly " + std::to_string(want) + " cells");
    build_sums();
}

LCFunction LCFunction::zero(Ball support, int resolution) {
    std::uint64_t n = 1;
    for (int l = support.level(); l < resolution; ++l) n *= support.child_count();
    return LCFunction(std::move(support), resolution, std::vector<Complex>(n, Complex{0.0, 0.0}));
}

LCFunction LCFunction::constant(Ball support, Complex value, int resolution) {
    std::uint64_t n = 1;
    for (int l = support.level(); l < resolution; ++l) n *= support.child_count();
    return LCFunction(std::move(support), resolution, std::vector<Complex>(n, value));
}

void LCFunction::build_sums() {
    const std::uint64_t branch = support_.child_count();
    const int depth = resolution_ - support_.level();
    sums_.assign(static_cast<std::size_t>(depth) + 1, {});
    sums_[static_cast<std::size_t>(depth)] = cells_;
    for (int l = depth - 1; l >= 0; --l) {
        const auto& fine = sums_[static_cast<std::size_t>(l) + 1];
        auto& coarse = sums_[static_cast<std::size_t>(l)];
        coarse.assign(fine.size() / branch, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < fine.size(); ++i) coarse[i / branch] += fine[i];
    }
}

Ball LCFunction::cell_ball(std::uint64_t idx) const {
    const std::uint64_t branch = support_.child_count();
    const int depth = resolution_ - support_.level();
    std::vector<std::uint64_t> path(static_cast<std::size_t>(depth));
    for (int l = depth; l-- > 0;) {
        path[static_cast<std::size_t>(l)] = idx % branch;
        idx /= branch;
    }
    Ball b = support_;
    for (std::uint64_t cls : path) b = b.child_by_index(cls);
    return b;
}

std::uint64_t LCFunction::cell_index(const Ball& C) const {
    if (C.level() != resolution_) fail("bad-level", "cell lookup needs a resolution-level ball");
    const std::uint32_t p = prime();
    std::uint64_t idx = 0;
    for (int pos = support_.level(); pos < resolution_; ++pos) {
        FpVec cls(static_cast<std::size_t>(dim()));
        for (int i = 0; i < dim(); ++i) cls[static_cast<std::size_t>(i)] = C.center_digit(i, pos);
        idx = idx * support_.child_count() + class_index(p, cls);
    }
    return idx;
}

std::uint64_t LCFunction::cell_index_of_point(const PAdicVec& x) const {
    if (x.known_to() < resolution_)
        fail("insufficient-precision", "point is not known to the table resolution");
    const std::uint32_t p = prime();
    std::uint64_t idx = 0;
    for (int pos = support_.level(); pos < resolution_; ++pos) {
        FpVec cls(static_cast<std::size_t>(dim()));
        for (int i = 0; i < dim(); ++i) cls[static_cast<std::size_t>(i)] = x[i].digit_at(pos);
        idx = idx * support_.child_count() + class_index(p, cls);
    }
    return idx;
}

Complex LCFunction::evaluate(const PAdicVec& x) const {
    if (!support_.contains_point(x)) return {0.0, 0.0};
    return cells_[cell_index_of_point(x)];
}

Complex LCFunction::value_on(const Ball& C) const {
    if (C.level() < resolution_) {
        if (!support_.contains(C) && !C.contains(support_))
            return {0.0, 0.0};
        fail("bad-level", "function is not constant on a ball above its resolution");
    }
    if (!support_.contains(C)) return {0.0, 0.0};
    Ball cell = C.ancestor(resolution_);
    return cells_[cell_index(cell)];
}

Complex LCFunction::integral() const {
    double w = std::pow(static_cast<double>(prime()), -static_cast<double>(resolution_) * dim());
    return sums_[0][0] * w;
}

Complex LCFunction::integral_over(const Ball& B) const {
    if (B.contains(support_)) return integral();
    if (!support_.contains(B)) return {0.0, 0.0}; // disjoint
    const double pw = static_cast<double>(prime());
    if (B.level() >= resolution_) {
        Ball cell = B.ancestor(resolution_);
        double measure = std::pow(pw, -static_cast<double>(B.level()) * dim());
        return cells_[cell_index(cell)] * measure;
    }
    // node lookup at B's level
    std::uint64_t idx = 0;
    for (int pos = support_.level(); pos < B.level(); ++pos) {
        FpVec cls(static_cast<std::size_t>(dim()));
        for (int i = 0; i < dim(); ++i) cls[static_cast<std::size_t>(i)] = B.center_digit(i, pos);
        idx = idx * support_.child_count() + class_index(prime(), cls);
    }
    double w = std::pow(pw, -static_cast<double>(resolution_) * dim());
    return sums_[static_cast<std::size_t>(B.level() - support_.level())][idx] * w;
}

LCFunction LCFunction::refined(int new_resolution) const {
    if (new_resolution < resolution_) fail("bad-level", "refinement must not coarsen");
    if (new_resolution == resolution_) return *this;
    std::uint64_t extra = 1;
    for (int l = resolution_; l < new_resolution; ++l) extra *= support_.child_count();
    std::vector<Complex> cells(cells_.size() * extra);
    for (std::size_t i = 0; i < cells_.size(); ++i)
        for (std::uint64_t k = 0; k < extra; ++k) cells[i * extra + k] = cells_[i];
    return LCFunction(support_, new_resolution, std::move(cells));
}

LCFunction LCFunction::scaled(Complex c) const {
    std::vector<Complex> cells = cells_;
    for (auto& v : cells) v *= c;
    return LCFunction(support_, resolution_, std::move(cells));
}

LCFunction lc_add(const LCFunction& f, const LCFunction& g) {
    Ball S = sup(f.support(), g.support());
    int R = std::max({f.resolution(), g.resolution(), S.level()});
    std::uint64_t n = 1;
    for (int l = S.level(); l < R; ++l) n *= S.child_count();
    std::vector<Complex> cells(n);
    LCFunction out = LCFunction::zero(S, R);
    for (std::uint64_t i = 0; i < n; ++i) {
        Ball c = out.cell_ball(i);
        cells[i] = f.value_on(c) + g.value_on(c);
    }
    return LCFunction(S, R, std::move(cells));
}

LCFunction lc_sub(const LCFunction& f, const LCFunction& g) {
    return lc_add(f, g.scaled({-1.0, 0.0}));
}

Complex inner(const LCFunction& f, const LCFunction& g) {
    // domain: the finer of the two supports when nested, empty otherwise
    Ball domain = f.support();
    if (f.support().contains(g.support())) {
        domain = g.support();
    } else if (g.support().contains(f.support())) {
        domain = f.support();
    } else {
        return {0.0, 0.0};
    }
    int R = std::max(f.resolution(), g.resolution());
    double w = std::pow(static_cast<double>(f.prime()), -static_cast<double>(R) * f.dim());
    Complex acc{0.0, 0.0};
    for (const Ball& cell : subballs_at_level(domain, R))
        acc += f.value_on(cell) * std::conj(g.value_on(cell)) * w;
    return acc;
}

double l2norm(const LCFunction& f) { return std::sqrt(std::abs(inner(f, f))); }

double max_abs_diff(const LCFunction& f, const LCFunction& g) {
    Ball S = sup(f.support(), g.support());
    int R = std::max({f.resolution(), g.resolution(), S.level()});
    double worst = 0.0;
    for (const Ball& cell : subballs_at_level(S, R))
        worst = std::max(worst, std::abs(f.value_on(cell) - g.value_on(cell)));
    return worst;
}

WaveletIndex WaveletIndex::from_ball(const Ball& B, const FpVec& J) {
    WaveletIndex idx;
    idx.gamma = -B.level();
    idx.J = J;
    idx.n.assign(static_cast<std::size_t>(B.dim()), {});
    for (int i = 0; i < B.dim(); ++i) {
        int floor = B.coord_floor(i);
        if (floor >= B.level()) continue;
        // center digit at position pos maps to the n digit at pos - L,
        // stored with entry k at position -(k+1)
        int len = B.level() - floor;
        std::vector<std::uint32_t> digits(static_cast<std::size_t>(len), 0);
        for (int pos = floor; pos < B.level(); ++pos) {
            int k = B.level() - pos - 1;
            digits[static_cast<std::size_t>(k)] = B.center_digit(i, pos);
        }
        while (!digits.empty() && digits.back() == 0) digits.pop_back();
        idx.n[static_cast<std::size_t>(i)] = std::move(digits);
    }
    return idx;
}

Ball wavelet_support(const WaveletIndex& idx, std::uint32_t p, int d) {
    if (static_cast<int>(idx.n.size()) != d) fail("invalid-index", "n must have d coordinates");
    const int L = -idx.gamma;
    std::vector<PAdic> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const auto& nd = idx.n[static_cast<std::size_t>(i)];
        std::vector<std::uint32_t> digits(nd.size(), 0);
        // n digit k sits at position -(k+1); the center digit at -(k+1)+L...
        // center = p^{-gamma} n: digit at position -(k+1) - gamma = L - k - 1
        for (std::size_t k = 0; k < nd.size(); ++k)
            digits[nd.size() - 1 - k] = nd[k];
        int start = L - static_cast<int>(nd.size());
        comps.push_back(nd.empty() ? PAdic::zero(p)
                                   : PAdic::from_digits(p, start, std::move(digits)));
    }
    return Ball::from_point(PAdicVec(std::move(comps)), L);
}

LCFunction wavelet(const WaveletIndex& idx, std::uint32_t p, int d) {
    if (fp_is_zero(idx.J) || static_cast<int>(idx.J.size()) != d)
        fail("invalid-index", "J must be a nonzero vector of d residues");
    for (std::uint32_t j : idx.J)
        if (j >= p) fail("invalid-index", "J residue out of range");
    Ball B = wavelet_support(idx, p, d);
    const double mag = std::pow(static_cast<double>(p),
                                -static_cast<double>(d) * idx.gamma / 2.0);
    std::uint64_t n = B.child_count();
    std::vector<Complex> cells(n);
    for (std::uint64_t t = 0; t < n; ++t) {
        FpVec cls = class_from_index(p, d, t);
        std::uint64_t dot = 0;
        for (int i = 0; i < d; ++i)
            dot += static_cast<std::uint64_t>(idx.J[static_cast<std::size_t>(i)]) *
                   cls[static_cast<std::size_t>(i)];
        cells[t] = UnitComplex::root_of_unity(p, static_cast<long long>(dot % p)).value() * mag;
    }
    return LCFunction(B, B.level() + 1, std::move(cells));
}

LCFunction pushforward(const Morphism& phi, const LCFunction& f) {
    const int gamma = phi.gamma();
    Morphism inv = phi.inverse();
    Ball Bout = inv.image_ball(f.support());
    const int Rout = f.resolution() - gamma;
    if (Rout < Bout.level()) fail("bad-level", "pushforward output resolution underflow");
    LCFunction out = LCFunction::zero(Bout, Rout);
    std::vector<Complex> cells(out.cell_count());

    // descend source and image chains together, mapping classes through the
    // tangent actions
    struct Frame {
        Ball src;
        Ball img;
        std::uint64_t idx;
        int level;
    };
    Ball img0 = phi.image_ball(Bout);
    std::vector<Frame> stack = {{Bout, img0, 0, Bout.level()}};
    const std::uint64_t branch = Bout.child_count();
    while (!stack.empty()) {
        Frame fr = stack.back();
        stack.pop_back();
        if (fr.level == Rout) {
            cells[fr.idx] = f.value_on(fr.img);
            continue;
        }
        ChildAction act = phi.tangent_map(fr.src);
        for (std::uint64_t t = 0; t < branch; ++t) {
            Ball src_child = fr.src.child_by_index(t);
            Ball img_child = fr.img.child_by_index(act.apply_index(t));
            stack.push_back({std::move(src_child), std::move(img_child), fr.idx * branch + t,
                             fr.level + 1});
        }
    }
    return LCFunction(Bout, Rout, std::move(cells));
}

LCFunction unitary_action(const Morphism& phi, const LCFunction& f) {
    const double scale = std::pow(static_cast<double>(phi.prime()),
                                  -static_cast<double>(phi.dim()) * phi.gamma() / 2.0);
    return pushforward(phi, f).scaled({scale, 0.0});
}

} // namespace padic
