#include "padic/morphism.hpp"

#include <algorithm>

namespace padic {

// ---------------------------------------------------------------------------
// ChildAction

ChildAction ChildAction::identity(std::uint32_t p, int d) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= p;
    std::vector<std::uint32_t> map(n);
    for (std::uint64_t i = 0; i < n; ++i) map[i] = static_cast<std::uint32_t>(i);
    return from_permutation(p, d, std::move(map));
}

ChildAction ChildAction::from_permutation(std::uint32_t p, int d, std::vector<std::uint32_t> map) {
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= p;
    if (map.size() != n) fail("invalid-action", "child action table has the wrong size");
    std::vector<bool> seen(n, false);
    for (std::uint32_t v : map) {
        if (v >= n || seen[v]) fail("invalid-action", "child action is not a bijection");
        seen[v] = true;
    }
    ChildAction a;
    a.p_ = p;
    a.d_ = d;
    a.map_ = std::move(map);
    a.derive_affine();
    return a;
}

ChildAction ChildAction::from_affine(const FpMat& A, const FpVec& b) {
    const std::uint32_t p = A.prime();
    const int d = A.dim();
    if (A.det() == 0) fail("invalid-action", "linear part is singular mod p");
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= p;
    std::vector<std::uint32_t> map(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        FpVec x = class_from_index(p, d, i);
        map[i] = static_cast<std::uint32_t>(class_index(p, fp_add(p, A.apply(x), b)));
    }
    return from_permutation(p, d, std::move(map));
}

void ChildAction::derive_affine() {
    const std::uint32_t p = p_;
    const int d = d_;
    FpVec b = class_from_index(p, d, map_[0]); // image of 0
    FpMat A(p, d);
    for (int c = 0; c < d; ++c) {
        FpVec e(static_cast<std::size_t>(d), 0);
        e[static_cast<std::size_t>(c)] = 1;
        FpVec col = fp_sub(p, class_from_index(p, d, map_[class_index(p, e)]), b);
        for (int r = 0; r < d; ++r) A.at(r, c) = col[static_cast<std::size_t>(r)];
    }
    for (std::uint64_t i = 0; i < map_.size(); ++i) {
        FpVec x = class_from_index(p, d, i);
        if (class_index(p, fp_add(p, A.apply(x), b)) != map_[i]) {
            affine_.reset();
            return;
        }
    }
    if (A.det() == 0) {
        affine_.reset();
        return;
    }
    affine_ = std::make_pair(std::move(A), std::move(b));
}

FpVec ChildAction::apply(const FpVec& cls) const {
    return class_from_index(p_, d_, map_.at(class_index(p_, cls)));
}

ChildAction ChildAction::compose_after(const ChildAction& inner) const {
    if (p_ != inner.p_ || d_ != inner.d_) fail("invalid-action", "child action mismatch");
    std::vector<std::uint32_t> map(map_.size());
    for (std::uint64_t i = 0; i < map_.size(); ++i) map[i] = map_[inner.map_[i]];
    return from_permutation(p_, d_, std::move(map));
}

ChildAction ChildAction::inverse() const {
    std::vector<std::uint32_t> map(map_.size());
    for (std::uint64_t i = 0; i < map_.size(); ++i) map[map_[i]] = static_cast<std::uint32_t>(i);
    return from_permutation(p_, d_, std::move(map));
}

bool ChildAction::is_identity() const {
    for (std::uint64_t i = 0; i < map_.size(); ++i)
        if (map_[i] != i) return false;
    return true;
}

const FpMat& ChildAction::linear_part() const {
    if (!affine_) fail("invalid-action", "child action is not affine");
    return affine_->first;
}

const FpVec& ChildAction::translation_part() const {
    if (!affine_) fail("invalid-action", "child action is not affine");
    return affine_->second;
}

// ---------------------------------------------------------------------------
// Provider default walks

Ball IsometryProvider::image_ball(const Ball& B) const {
    const int A = anchor_level();
    if (B.level() <= A) return B;
    Ball cur = B.ancestor(A);
    Ball img = cur;
    for (int pos = A; pos < B.level(); ++pos) {
        FpVec cls(static_cast<std::size_t>(B.dim()));
        for (int i = 0; i < B.dim(); ++i)
            cls[static_cast<std::size_t>(i)] = B.center_digit(i, pos);
        ChildAction act = action(cur);
        FpVec icls = act.apply(cls);
        cur = cur.child(cls);
        img = img.child(icls);
    }
    return img;
}

PAdicVec IsometryProvider::apply_point(const PAdicVec& x) const {
    const int A = anchor_level();
    const int limit = x.known_to();
    const int d = x.dim();
    const std::uint32_t p = x.prime();
    if (limit <= A) return x;
    Ball cur = Ball::from_point(x, A);
    std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(d));
    for (int pos = A; pos < limit; ++pos) {
        FpVec cls(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) cls[static_cast<std::size_t>(i)] = x[i].digit_at(pos);
        ChildAction act = action(cur);
        FpVec icls = act.apply(cls);
        for (int i = 0; i < d; ++i) out[static_cast<std::size_t>(i)].push_back(icls[static_cast<std::size_t>(i)]);
        cur = cur.child(cls);
    }
    std::vector<PAdic> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        int lo = std::min(A, x[i].is_zero() ? A : x[i].lowest_position());
        std::vector<std::uint32_t> digits;
        for (int pos = lo; pos < A; ++pos) digits.push_back(x[i].digit_at(pos));
        digits.insert(digits.end(), out[static_cast<std::size_t>(i)].begin(),
                      out[static_cast<std::size_t>(i)].end());
        comps.push_back(PAdic::from_digits(p, lo, std::move(digits), limit));
    }
    return PAdicVec(std::move(comps));
}

// ---------------------------------------------------------------------------
// Concrete providers

namespace {

class IdentityProvider final : public IsometryProvider {
public:
    IdentityProvider(std::uint32_t p, int d) : p_(p), d_(d) {}
    std::uint32_t prime() const override { return p_; }
    int dim() const override { return d_; }
    int anchor_level() const override { return 0; }
    ChildAction action(const Ball&) const override { return ChildAction::identity(p_, d_); }
    Ball image_ball(const Ball& B) const override { return B; }
    PAdicVec apply_point(const PAdicVec& x) const override { return x; }
    ProviderPtr inverted() const override { return shared_from_this(); }

private:
    std::uint32_t p_;
    int d_;
};

class SeededProvider final : public IsometryProvider {
public:
    explicit SeededProvider(const SeededIsometrySpec& spec) : spec_(spec) {
        if (!is_prime(spec.p)) fail("not-prime", "p must be a prime >= 2");
        if (spec.d < 1) fail("bad-dimension", "dimension must be >= 1");
    }

    std::uint32_t prime() const override { return spec_.p; }
    int dim() const override { return spec_.d; }
    int anchor_level() const override { return spec_.anchor; }

    ChildAction action(const Ball& B) const override {
        if (B.level() < spec_.anchor) return ChildAction::identity(spec_.p, spec_.d);
        const std::string key = B.encode();
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        ChildAction act = generate(key);
        std::lock_guard<std::mutex> lock(mutex_);
        return cache_.emplace(key, std::move(act)).first->second;
    }

private:
    ChildAction generate(const std::string& key) const {
        SplitMix64 g = ball_stream(spec_.seed, key);
        const std::uint32_t p = spec_.p;
        const int d = spec_.d;
        if (spec_.mode == SeededMode::permutation) {
            std::uint64_t n = 1;
            for (int i = 0; i < d; ++i) n *= p;
            return ChildAction::from_permutation(p, d, g.permutation(static_cast<std::uint32_t>(n)));
        }
        FpMat A(p, d);
        for (;;) {
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    A.at(r, c) = static_cast<std::uint32_t>(g.uniform(p));
            if (A.det() != 0) break;
        }
        FpVec b(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(g.uniform(p));
        return ChildAction::from_affine(A, b);
    }

    SeededIsometrySpec spec_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<std::string, ChildAction> cache_;
};

class TableProvider final : public IsometryProvider {
public:
    explicit TableProvider(const TableIsometrySpec& spec)
        : p_(spec.p), d_(spec.d), actions_(spec.actions) {
        int min_level = 0;
        for (const auto& [key, act] : actions_) {
            Ball b = Ball::decode(key);
            if (b.prime() != p_ || b.dim() != d_)
                fail("invalid-action", "table ball does not match the morphism signature");
            if (act.prime() != p_ || act.dim() != d_)
                fail("invalid-action", "table action does not match the morphism signature");
            min_level = std::min(min_level, b.level());
        }
        anchor_ = spec.anchor.value_or(min_level);
        if (anchor_ > min_level)
            fail("invalid-action", "anchor must not refine the coarsest table ball");
    }

    std::uint32_t prime() const override { return p_; }
    int dim() const override { return d_; }
    int anchor_level() const override { return anchor_; }

    ChildAction action(const Ball& B) const override {
        auto it = actions_.find(B.encode());
        if (it != actions_.end()) return it->second;
        return ChildAction::identity(p_, d_);
    }

private:
    std::uint32_t p_;
    int d_;
    std::map<std::string, ChildAction> actions_;
    int anchor_ = 0;
};

class ComposedProvider final : public IsometryProvider {
public:
    explicit ComposedProvider(std::vector<ProviderPtr> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) fail("invalid-action", "composition needs at least one part");
        anchor_ = parts_[0]->anchor_level();
        for (const auto& q : parts_) anchor_ = std::min(anchor_, q->anchor_level());
    }

    std::uint32_t prime() const override { return parts_[0]->prime(); }
    int dim() const override { return parts_[0]->dim(); }
    int anchor_level() const override { return anchor_; }

    ChildAction action(const Ball& B) const override {
        ChildAction total = ChildAction::identity(prime(), dim());
        Ball cur = B;
        for (const auto& q : parts_) {
            total = q->action(cur).compose_after(total);
            cur = q->image_ball(cur);
        }
        return total;
    }

    Ball image_ball(const Ball& B) const override {
        Ball cur = B;
        for (const auto& q : parts_) cur = q->image_ball(cur);
        return cur;
    }

    PAdicVec apply_point(const PAdicVec& x) const override {
        PAdicVec cur = x;
        for (const auto& q : parts_) cur = q->apply_point(cur);
        return cur;
    }

    ProviderPtr inverted() const override {
        std::vector<ProviderPtr> parts(parts_.rbegin(), parts_.rend());
        for (auto& q : parts) q = q->inverted();
        return std::make_shared<ComposedProvider>(std::move(parts));
    }

private:
    std::vector<ProviderPtr> parts_;
    int anchor_ = 0;
};

// base conjugated by the dilation p^g: D_{-g} . base . D_g
class ConjugatedProvider final : public IsometryProvider {
public:
    ConjugatedProvider(ProviderPtr base, int g) : base_(std::move(base)), g_(g) {}

    std::uint32_t prime() const override { return base_->prime(); }
    int dim() const override { return base_->dim(); }
    int anchor_level() const override { return base_->anchor_level() - g_; }

    ChildAction action(const Ball& B) const override { return base_->action(B.scaled(g_)); }

    Ball image_ball(const Ball& B) const override {
        return base_->image_ball(B.scaled(g_)).scaled(-g_);
    }

    PAdicVec apply_point(const PAdicVec& x) const override {
        return base_->apply_point(x.mul_pow_p(g_)).mul_pow_p(-g_);
    }

    ProviderPtr inverted() const override {
        return std::make_shared<ConjugatedProvider>(base_->inverted(), g_);
    }

private:
    ProviderPtr base_;
    int g_;
};

class InverseProvider final : public IsometryProvider {
public:
    explicit InverseProvider(ProviderPtr base) : base_(std::move(base)) {}

    std::uint32_t prime() const override { return base_->prime(); }
    int dim() const override { return base_->dim(); }
    int anchor_level() const override { return base_->anchor_level(); }

    // image under the inverse = preimage under the base, found by inverting
    // each ball action along the image chain
    Ball image_ball(const Ball& B) const override {
        const int A = base_->anchor_level();
        if (B.level() <= A) return B;
        Ball img = B.ancestor(A);
        Ball src = img;
        for (int pos = A; pos < B.level(); ++pos) {
            FpVec icls(static_cast<std::size_t>(B.dim()));
            for (int i = 0; i < B.dim(); ++i)
                icls[static_cast<std::size_t>(i)] = B.center_digit(i, pos);
            FpVec cls = base_->action(src).inverse().apply(icls);
            src = src.child(cls);
            img = img.child(icls);
        }
        return src;
    }

    ChildAction action(const Ball& B) const override {
        return base_->action(image_ball(B)).inverse();
    }

    PAdicVec apply_point(const PAdicVec& y) const override {
        const int A = base_->anchor_level();
        const int limit = y.known_to();
        const int d = y.dim();
        if (limit <= A) return y;
        Ball src = Ball::from_point(y, A);
        std::vector<std::vector<std::uint32_t>> out(static_cast<std::size_t>(d));
        for (int pos = A; pos < limit; ++pos) {
            FpVec icls(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) icls[static_cast<std::size_t>(i)] = y[i].digit_at(pos);
            FpVec cls = base_->action(src).inverse().apply(icls);
            for (int i = 0; i < d; ++i)
                out[static_cast<std::size_t>(i)].push_back(cls[static_cast<std::size_t>(i)]);
            src = src.child(cls);
        }
        std::vector<PAdic> comps;
        for (int i = 0; i < d; ++i) {
            int lo = std::min(A, y[i].is_zero() ? A : y[i].lowest_position());
            std::vector<std::uint32_t> digits;
            for (int pos = lo; pos < A; ++pos) digits.push_back(y[i].digit_at(pos));
            digits.insert(digits.end(), out[static_cast<std::size_t>(i)].begin(),
                          out[static_cast<std::size_t>(i)].end());
            comps.push_back(PAdic::from_digits(y.prime(), lo, std::move(digits), limit));
        }
        return PAdicVec(std::move(comps));
    }

    ProviderPtr inverted() const override { return base_; }

private:
    ProviderPtr base_;
};

// d = 1 affine isometry x -> u x + b with |u| = 1.
class AffineProvider final : public IsometryProvider {
public:
    AffineProvider(PAdic u, PAdic b) : u_(std::move(u)), b_(std::move(b)) {
        if (u_.is_zero() || *u_.valuation() != 0)
            fail("invalid-action", "affine isometry needs a unit linear part");
    }

    std::uint32_t prime() const override { return u_.prime(); }
    int dim() const override { return 1; }
    int anchor_level() const override { return -(PAdic::kExactLimit / 2); }

    PAdicVec apply_point(const PAdicVec& x) const override {
        return PAdicVec({u_.mul(x[0]).add(b_)});
    }

    Ball image_ball(const Ball& B) const override {
        PAdicVec c = B.center(PAdic::kDefaultPrecision);
        return Ball::from_point(apply_point(c), B.level());
    }

    ChildAction action(const Ball& B) const override {
        const std::uint32_t p = prime();
        const int L = B.level();
        PAdic c = B.center(PAdic::kDefaultPrecision)[0];
        std::vector<std::uint32_t> map(p);
        for (std::uint32_t t = 0; t < p; ++t) {
            PAdic ct = c.add(PAdic::from_digits(p, L, {t == 0 ? 1u : t}, L + 4));
            if (t == 0) ct = c; // avoid constructing a zero digit
            PAdic img = u_.mul(ct).add(b_);
            map[t] = img.digit_at(L);
        }
        return ChildAction::from_permutation(p, 1, std::move(map));
    }

    ProviderPtr inverted() const override {
        PAdic uinv = u_.invert_unit();
        return std::make_shared<AffineProvider>(uinv, uinv.mul(b_).neg());
    }

private:
    PAdic u_;
    PAdic b_;
};

} // namespace

ProviderPtr IsometryProvider::inverted() const {
    return std::make_shared<InverseProvider>(shared_from_this());
}

ProviderPtr make_identity_provider(std::uint32_t p, int d) {
    return std::make_shared<IdentityProvider>(p, d);
}

ProviderPtr make_seeded_provider(const SeededIsometrySpec& spec) {
    return std::make_shared<SeededProvider>(spec);
}

ProviderPtr make_table_provider(const TableIsometrySpec& spec) {
    return std::make_shared<TableProvider>(spec);
}

ProviderPtr make_composed_provider(std::vector<ProviderPtr> parts) {
    return std::make_shared<ComposedProvider>(std::move(parts));
}

ProviderPtr make_affine_provider(const PAdic& u, const PAdic& b) {
    return std::make_shared<AffineProvider>(u, b);
}

// ---------------------------------------------------------------------------
// Morphism

Morphism Morphism::identity(std::uint32_t p, int d) {
    Morphism m;
    m.p_ = p;
    m.d_ = d;
    return m;
}

Morphism Morphism::dilation(std::uint32_t p, int d, int gamma) {
    Morphism m;
    m.p_ = p;
    m.d_ = d;
    if (gamma != 0) m.atoms_.push_back({gamma, nullptr});
    return m;
}

Morphism Morphism::isometry(ProviderPtr provider) {
    Morphism m;
    m.p_ = provider->prime();
    m.d_ = provider->dim();
    m.atoms_.push_back({0, std::move(provider)});
    return m;
}

int Morphism::gamma() const {
    int g = 0;
    for (const Atom& a : atoms_)
        if (!a.iso) g += a.gamma;
    return g;
}

bool Morphism::has_isometry_part() const {
    for (const Atom& a : atoms_)
        if (a.iso) return true;
    return false;
}

PAdicVec Morphism::apply_point(const PAdicVec& x) const {
    PAdicVec cur = x;
    for (const Atom& a : atoms_) cur = a.iso ? a.iso->apply_point(cur) : cur.mul_pow_p(a.gamma);
    return cur;
}

Ball Morphism::image_ball(const Ball& B) const {
    Ball cur = B;
    for (const Atom& a : atoms_) cur = a.iso ? a.iso->image_ball(cur) : cur.scaled(a.gamma);
    return cur;
}

ChildAction Morphism::tangent_map(const Ball& B) const {
    ChildAction total = ChildAction::identity(p_, d_);
    Ball cur = B;
    for (const Atom& a : atoms_) {
        if (a.iso) {
            total = a.iso->action(cur).compose_after(total);
            cur = a.iso->image_ball(cur);
        } else {
            cur = cur.scaled(a.gamma);
        }
    }
    return total;
}

Morphism Morphism::inverse() const {
    Morphism m;
    m.p_ = p_;
    m.d_ = d_;
    for (auto it = atoms_.rbegin(); it != atoms_.rend(); ++it)
        m.atoms_.push_back(it->iso ? Atom{0, it->iso->inverted()} : Atom{-it->gamma, nullptr});
    return m;
}

std::pair<int, Morphism> Morphism::parabolic_normalize() const {
    int g = 0;
    std::vector<ProviderPtr> parts;
    for (const Atom& a : atoms_) {
        if (!a.iso) {
            g += a.gamma;
            continue;
        }
        parts.push_back(g == 0 ? a.iso : ProviderPtr(std::make_shared<ConjugatedProvider>(a.iso, g)));
    }
    Morphism eta = parts.empty() ? Morphism::identity(p_, d_)
                                 : Morphism::isometry(parts.size() == 1
                                                          ? parts[0]
                                                          : make_composed_provider(std::move(parts)));
    return {g, eta};
}

Morphism compose(const Morphism& outer, const Morphism& inner) {
    if (outer.p_ != inner.p_ || outer.d_ != inner.d_)
        fail("prime-mismatch", "composition needs matching p and d");
    Morphism m;
    m.p_ = outer.p_;
    m.d_ = outer.d_;
    m.atoms_ = inner.atoms_;
    m.atoms_.insert(m.atoms_.end(), outer.atoms_.begin(), outer.atoms_.end());
    return m;
}

Morphism make_isometry(const SeededIsometrySpec& spec) {
    return Morphism::isometry(make_seeded_provider(spec));
}

Morphism make_isometry(const TableIsometrySpec& spec) {
    return Morphism::isometry(make_table_provider(spec));
}

Morphism make_dilation(std::uint32_t p, int d, int gamma) {
    return Morphism::dilation(p, d, gamma);
}

Morphism make_affine_morphism(const DifferentiableSpec& spec) {
    if (spec.u.is_zero()) fail("invalid-action", "affine morphism needs u != 0");
    const std::uint32_t p = spec.u.prime();
    int g = *spec.u.valuation();
    PAdic w = spec.u.mul_pow_p(-g);          // unit part
    PAdic b = spec.a.mul_pow_p(-g);          // p^-g a
    Morphism eta = Morphism::isometry(make_affine_provider(w, b));
    return compose(Morphism::dilation(p, 1, g), eta);
}

double derivative_norm(const DifferentiableSpec& spec) { return spec.u.norm(); }

int derivative_norm_exponent(const DifferentiableSpec& spec) {
    if (spec.u.is_zero()) fail("invalid-action", "zero derivative");
    return *spec.u.norm_exponent();
}

PAdicVec random_point(SplitMix64& gen, std::uint32_t p, int d, int digits, int vmin, int vmax) {
    std::vector<PAdic> comps;
    comps.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        int v = vmin + static_cast<int>(gen.uniform(static_cast<std::uint64_t>(vmax - vmin + 1)));
        std::vector<std::uint32_t> dg;
        dg.push_back(1 + static_cast<std::uint32_t>(gen.uniform(p - 1)));
        for (int k = 1; k < digits; ++k) dg.push_back(static_cast<std::uint32_t>(gen.uniform(p)));
        comps.push_back(PAdic::from_digits(p, v, std::move(dg), v + digits));
    }
    return PAdicVec(std::move(comps));
}

CheckReport is_isometry_check(const Morphism& phi, int sample_count, int level_lo, int level_hi,
                              std::uint64_t seed) {
    CheckReport rep;
    SplitMix64 g(seed);
    const std::uint32_t p = phi.prime();
    const int d = phi.dim();
    for (int i = 0; i < sample_count && rep.pass; ++i) {
        PAdicVec x = random_point(g, p, d, 14, level_lo, level_hi);
        PAdicVec y = random_point(g, p, d, 14, level_lo, level_hi);
        if (x == y) continue;
        PAdicVec fx = phi.apply_point(x);
        PAdicVec fy = phi.apply_point(y);
        auto dist = x.sub(y).norm_exponent();
        auto fdist = fx.sub(fy).norm_exponent();
        ++rep.pairs_checked;
        if (!fdist || *fdist != *dist) {
            rep.pass = false;
            rep.counterexample = "distance changed for the pair (" + x[0].format() + ", " +
                                 y[0].format() + ")";
            break;
        }
        // orispheric fixed chain: every ball containing sup(x, phi(x)) is fixed
        if (!(fx == x)) {
            Ball I = sup(x, fx);
            Ball J = I;
            for (int k = 0; k < 6 && rep.pass; ++k) {
                ++rep.balls_checked;
                if (!(phi.image_ball(J) == J)) {
                    rep.pass = false;
                    rep.counterexample = "ball " + J.encode() + " above sup(x, phi(x)) moved";
                }
                J = J.parent();
            }
        }
    }
    if (!rep.pass) return rep;
    // diameter preservation on sampled balls
    for (int i = 0; i < sample_count / 2; ++i) {
        PAdicVec x = random_point(g, p, d, 14, level_lo, level_hi);
        int L = level_lo + static_cast<int>(g.uniform(static_cast<std::uint64_t>(level_hi - level_lo + 1)));
        Ball B = Ball::from_point(x, L);
        Ball I = phi.image_ball(B);
        ++rep.balls_checked;
        if (I.level() != B.level()) {
            rep.pass = false;
            rep.counterexample = "diameter changed for ball " + B.encode() + " -> " + I.encode();
            break;
        }
    }
    return rep;
}

CheckReport is_mod_p_affine_check(const Morphism& phi, int sample_count, int level_lo,
                                  int level_hi, std::uint64_t seed) {
    CheckReport rep;
    SplitMix64 g(seed);
    const std::uint32_t p = phi.prime();
    const int d = phi.dim();
    for (int i = 0; i < sample_count; ++i) {
        PAdicVec x = random_point(g, p, d, 14, level_lo, level_hi);
        int L = level_lo + static_cast<int>(g.uniform(static_cast<std::uint64_t>(level_hi - level_lo + 1)));
        Ball B = Ball::from_point(x, L);
        ChildAction act = phi.tangent_map(B);
        ++rep.balls_checked;
        if (!act.is_affine()) {
            rep.pass = false;
            rep.counterexample = "tangent map at " + B.encode() + " is not affine";
            break;
        }
    }
    return rep;
}

} // namespace padic
