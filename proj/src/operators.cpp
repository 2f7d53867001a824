#include "padic/operators.hpp"

#include <cmath>

namespace padic {

namespace {

double ppow(std::uint32_t p, double e) { return std::pow(static_cast<double>(p), e); }

// level of the minimal ball containing x and supp(f); equals the support
// level iff x lies in the support
int sup_level(const LCFunction& f, const PAdicVec& x) {
    Ball bx = Ball::from_point(x, f.support().level());
    return sup(bx, f.support()).level();
}

// chain of balls around x for levels [lo, hi]
std::vector<Ball> chain_of(const PAdicVec& x, int lo, int hi) {
    std::vector<Ball> out;
    if (hi < lo) return out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    Ball cur = Ball::from_point(x, lo);
    out.push_back(cur);
    for (int l = lo + 1; l <= hi; ++l) {
        FpVec cls(static_cast<std::size_t>(x.dim()));
        for (int i = 0; i < x.dim(); ++i) cls[static_cast<std::size_t>(i)] = x[i].digit_at(l - 1);
        cur = cur.child(cls);
        out.push_back(cur);
    }
    return out;
}

// closed form sum_{l < lo} p^(l (1+alpha-d)); geometric, needs 1+alpha > d
double coarse_geometric(std::uint32_t p, double alpha, int d, int lo) {
    const double e = 1.0 + alpha - d;
    return ppow(p, (lo - 1) * e) / (1.0 - ppow(p, -e));
}

void require_tail_convergence(const KernelView& F, int d) {
    if (std::abs(F.tail_c) != 0.0 && !(1.0 + F.alpha > static_cast<double>(d)))
        fail("divergent-kernel",
             "power tail needs alpha > d-1 for the coarse sums in dimension " + std::to_string(d));
}

LCFunction materialize(const Window& w, int min_resolution,
                       const std::function<Complex(const PAdicVec&)>& eval_at) {
    const int R = std::max(w.resolution, min_resolution);
    LCFunction out = LCFunction::zero(w.ball, R);
    std::vector<Complex> cells(out.cell_count());
    for (std::uint64_t i = 0; i < cells.size(); ++i) {
        PAdicVec x = out.cell_ball(i).center(PAdic::kDefaultPrecision + 8);
        cells[i] = eval_at(x);
    }
    return LCFunction(w.ball, R, std::move(cells));
}

} // namespace

double gamma_p(double alpha, std::uint32_t p) {
    if (!(alpha > 0.0)) fail("out-of-domain", "gamma_p needs alpha > 0");
    const double pd = static_cast<double>(p);
    return (std::pow(pd, alpha) - 1.0) / (1.0 - std::pow(pd, -1.0 - alpha));
}

void KernelSpec::validate() const {
    if (!(tail_alpha > 0.0)) fail("divergent-kernel", "tail exponent alpha must be positive");
    for (const auto& [key, value] : table) {
        (void)value;
        if (Ball::decode(key).level() < tail_from)
            fail("divergent-kernel", "table entries must sit at levels >= tail_from");
    }
}

KernelSpec KernelSpec::vladimirov(std::uint32_t p, double alpha) {
    KernelSpec F;
    F.tail_c = {gamma_p(alpha, p), 0.0};
    F.tail_alpha = alpha;
    F.tail_from = kPureTail;
    return F;
}

KernelView view_of(const KernelSpec& F) {
    F.validate();
    KernelView v;
    v.tail_c = F.tail_c;
    v.alpha = F.tail_alpha;
    v.tail_from = F.tail_from;
    v.eval = [spec = F](const Ball& B) -> Complex {
        if (B.level() < spec.tail_from)
            return spec.tail_c * ppow(B.prime(), B.level() * (1.0 + spec.tail_alpha));
        auto it = spec.table.find(B.encode());
        if (it == spec.table.end())
            fail("missing-kernel-entry", "no kernel value for ball " + B.encode());
        return it->second;
    };
    return v;
}

KernelView transported_view(const KernelView& F, const Morphism& phi) {
    const int gamma = phi.gamma();
    KernelView v;
    v.alpha = F.alpha;
    v.tail_from = F.tail_from - gamma;
    v.tail_c = F.tail_c * ppow(phi.prime(), gamma * (1.0 + F.alpha));
    auto base = F.eval;
    const Morphism m = phi;
    v.eval = [base, m](const Ball& B) { return base(m.image_ball(B)); };
    return v;
}

KernelView corrupted_view(const KernelView& F, double rel) {
    KernelView v = F;
    const double s = 1.0 + rel;
    v.tail_c = F.tail_c * s;
    auto base = F.eval;
    v.eval = [base, s](const Ball& B) { return base(B) * s; };
    return v;
}

VectorField VectorField::seeded(std::uint32_t p, int d, std::uint64_t seed) {
    VectorField f;
    f.p_ = p;
    f.d_ = d;
    f.seeded_ = true;
    f.seed_ = seed;
    return f;
}

VectorField VectorField::from_table(std::uint32_t p, int d, std::map<std::string, FpVec> entries,
                                    FpVec default_k1) {
    if (fp_is_zero(default_k1)) fail("invalid-direction", "default k1 must be nonzero");
    for (const auto& [key, k1] : entries) {
        (void)key;
        if (fp_is_zero(k1) || static_cast<int>(k1.size()) != d)
            fail("invalid-direction", "table k1 entries must be nonzero d-vectors");
    }
    VectorField f;
    f.p_ = p;
    f.d_ = d;
    f.seeded_ = false;
    f.entries_ = std::move(entries);
    f.default_ = std::move(default_k1);
    return f;
}

FpVec VectorField::k1(const Ball& B) const {
    if (!seeded_) {
        auto it = entries_.find(B.encode());
        return it != entries_.end() ? it->second : default_;
    }
    // frozen scheme: one uniform draw in [0, p^d - 1), shifted past zero
    std::uint64_t n = 1;
    for (int i = 0; i < d_; ++i) n *= p_;
    SplitMix64 g = ball_stream(seed_, B.encode());
    return class_from_index(p_, d_, 1 + g.uniform(n - 1));
}

std::function<FpVec(const Ball&)> VectorField::view() const {
    VectorField copy = *this;
    return [copy](const Ball& B) { return copy.k1(B); };
}

Complex vladimirov_at(double alpha, const LCFunction& f, const PAdicVec& x) {
    if (f.dim() != 1) fail("unsupported-dimension", "the Vladimirov operator is one-dimensional");
    if (!(alpha > 0.0)) fail("out-of-domain", "alpha must be positive");
    const std::uint32_t p = f.prime();
    const int R = f.resolution();
    const Complex fx = f.evaluate(x);
    const int lA = sup_level(f, x);

    Complex acc{0.0, 0.0};
    if (lA <= R - 1) {
        std::vector<Ball> chain = chain_of(x, lA, R);
        for (int l = lA; l <= R - 1; ++l) {
            const Ball& Bl = chain[static_cast<std::size_t>(l - lA)];
            const Ball& Bl1 = chain[static_cast<std::size_t>(l - lA + 1)];
            Complex shell_integral = f.integral_over(Bl) - f.integral_over(Bl1);
            double m_shell = ppow(p, -l) * (1.0 - 1.0 / p);
            double weight = ppow(p, l * (1.0 + alpha)); // |x-y|^-(1+alpha) on the shell
            acc += weight * (fx * m_shell - shell_integral);
        }
    }
    if (fx != Complex{0.0, 0.0}) {
        // coarse shells contain supp(f) entirely: only the f(x) term remains
        acc += fx * (1.0 - 1.0 / p) * ppow(p, (lA - 1) * alpha) / (1.0 - ppow(p, -alpha));
    }
    return gamma_p(alpha, p) * acc;
}

LCFunction vladimirov(double alpha, const LCFunction& f, const Window& w) {
    return materialize(w, f.resolution(),
                       [&](const PAdicVec& x) { return vladimirov_at(alpha, f, x); });
}

Complex kernel_op_at(const KernelView& F, const LCFunction& f, const PAdicVec& x) {
    const std::uint32_t p = f.prime();
    const int d = f.dim();
    const int R = f.resolution();
    const Complex fx = f.evaluate(x);
    const int lA = sup_level(f, x);
    const int lo = std::min(lA, F.tail_from);

    Complex acc{0.0, 0.0};
    if (lo <= R - 1) {
        std::vector<Ball> chain = chain_of(x, lo, R);
        const double shell_frac = 1.0 - ppow(p, -d);
        for (int l = lo; l <= R - 1; ++l) {
            const Ball& Bl = chain[static_cast<std::size_t>(l - lo)];
            const Ball& Bl1 = chain[static_cast<std::size_t>(l - lo + 1)];
            Complex shell_integral = f.integral_over(Bl) - f.integral_over(Bl1);
            double m_shell = ppow(p, -l * d) * shell_frac;
            acc += F.eval(Bl) * (fx * m_shell - shell_integral);
        }
    }
    if (fx != Complex{0.0, 0.0}) {
        require_tail_convergence(F, d);
        acc += fx * (1.0 - ppow(p, -d)) * F.tail_c * coarse_geometric(p, F.alpha, d, lo);
    }
    return acc;
}

LCFunction kernel_op(const KernelView& F, const LCFunction& f, const Window& w) {
    return materialize(w, f.resolution(),
                       [&](const PAdicVec& x) { return kernel_op_at(F, f, x); });
}

LCFunction kernel_op(const KernelSpec& F, const LCFunction& f, const Window& w) {
    return kernel_op(view_of(F), f, w);
}

Complex vf_op_at(const KernelView& F, const FieldView& field, const LCFunction& f,
                 const PAdicVec& x) {
    const std::uint32_t p = f.prime();
    const int d = f.dim();
    const int R = f.resolution();
    const Complex fx = f.evaluate(x);
    const int lA = sup_level(f, x);
    const int lo = std::min(lA, F.tail_from);

    Complex acc{0.0, 0.0};
    if (lo <= R - 1) {
        std::vector<Ball> chain = chain_of(x, lo, R);
        const double mz_frac = 1.0 - 1.0 / p;
        const double member_scale = ppow(p, d - 1);
        for (int l = lo; l <= R - 1; ++l) {
            const Ball& B = chain[static_cast<std::size_t>(l - lo)];
            FpVec raw = field(B);
            if (fp_is_zero(raw)) fail("invalid-direction", "vector field vanished at " + B.encode());
            // the operator depends on k1 only through F_p^* k1
            FpVec k1 = canonical_direction(p, raw);
            FpVec bx = chain[static_cast<std::size_t>(l - lo + 1)].class_in_parent();
            Complex member_integrals{0.0, 0.0};
            for (std::uint32_t j = 1; j < p; ++j) {
                Ball C = B.child(fp_add(p, bx, fp_scale(p, j, k1)));
                member_integrals += f.integral_over(C);
            }
            double mz_total = mz_frac * ppow(p, -l * d); // (1 - 1/p) p^(gamma d)
            acc += F.eval(B) * (fx * mz_total - member_scale * member_integrals);
        }
    }
    if (fx != Complex{0.0, 0.0}) {
        require_tail_convergence(F, d);
        acc += fx * (1.0 - 1.0 / p) * F.tail_c * coarse_geometric(p, F.alpha, d, lo);
    }
    return acc;
}

LCFunction vf_op(const KernelView& F, const VectorField& field, const LCFunction& f,
                 const Window& w) {
    FieldView fv = field.view();
    return materialize(w, f.resolution(),
                       [&](const PAdicVec& x) { return vf_op_at(F, fv, f, x); });
}

double wavelet_eigenvalue(std::uint32_t p, double alpha, int gamma) {
    return ppow(p, alpha * (1.0 - gamma));
}

Window preimage_window(const Morphism& phi, const LCFunction& f, int margin) {
    Ball region = f.support().ancestor(f.support().level() - margin);
    Window w;
    w.ball = phi.inverse().image_ball(region);
    w.resolution = f.resolution() - phi.gamma();
    return w;
}

namespace {

ResidualReport compare_on_window(const Window& w, int grid_resolution,
                                 const std::function<Complex(const PAdicVec&)>& lhs,
                                 const std::function<Complex(const PAdicVec&)>& rhs) {
    ResidualReport rep;
    for (const Ball& cell : subballs_at_level(w.ball, grid_resolution)) {
        PAdicVec x = cell.center(PAdic::kDefaultPrecision + 8);
        Complex a = lhs(x);
        Complex b = rhs(x);
        double diff = std::abs(a - b);
        ++rep.cells;
        rep.max_abs_value = std::max(rep.max_abs_value, std::abs(a));
        if (rep.argmax_cell.empty() || diff > rep.max_abs_diff) {
            rep.max_abs_diff = diff;
            rep.argmax_cell = cell.encode();
            rep.lhs_at_argmax = a;
            rep.rhs_at_argmax = b;
        }
    }
    return rep;
}

} // namespace

ResidualReport verify_transform_rule(const Morphism& phi, const KernelView& F,
                                     const LCFunction& f, const Window& w,
                                     double transport_corruption) {
    const int gamma = phi.gamma();
    const double factor = ppow(phi.prime(), -gamma);
    LCFunction phif = pushforward(phi, f);
    KernelView F2 = transported_view(F, phi);
    if (transport_corruption != 0.0) F2 = corrupted_view(F2, transport_corruption);
    const int grid = std::max({w.resolution, f.resolution(), f.resolution() - gamma});
    return compare_on_window(
        w, grid,
        [&](const PAdicVec& x) { return kernel_op_at(F, f, phi.apply_point(x)); },
        [&](const PAdicVec& x) { return factor * kernel_op_at(F2, phif, x); });
}

ResidualReport verify_chain_rule(const Morphism& phi, double alpha, const LCFunction& f,
                                 const Window& w) {
    const int gamma = phi.gamma();
    const double factor = ppow(phi.prime(), -gamma * alpha);
    LCFunction phif = pushforward(phi, f);
    const int grid = std::max({w.resolution, f.resolution(), f.resolution() - gamma});
    return compare_on_window(
        w, grid,
        [&](const PAdicVec& x) { return vladimirov_at(alpha, phif, x); },
        [&](const PAdicVec& x) { return factor * vladimirov_at(alpha, f, phi.apply_point(x)); });
}

ResidualReport verify_covariance(const Morphism& phi, const KernelView& F,
                                 const VectorField& field, const LCFunction& f, const Window& w) {
    if (phi.gamma() != 0) fail("invalid-action", "covariance needs an isometry (gamma = 0)");
    LCFunction phif = pushforward(phi, f);
    KernelView F2 = transported_view(F, phi);
    FieldView base = field.view();
    FieldView transported = [&phi, base](const Ball& B) {
        ChildAction act = phi.tangent_map(B);
        if (!act.is_affine()) fail("invalid-action", "tangent map is not affine at " + B.encode());
        return act.linear_part().inverse().apply(base(phi.image_ball(B)));
    };
    const int grid = std::max(w.resolution, f.resolution());
    return compare_on_window(
        w, grid,
        [&](const PAdicVec& x) { return vf_op_at(F, base, f, phi.apply_point(x)); },
        [&](const PAdicVec& x) { return vf_op_at(F2, transported, phif, x); });
}

} // namespace padic
