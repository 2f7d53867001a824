#include "padic/ball.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace padic {

namespace {

constexpr const char* kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

int digit_from_char(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'z') return c - 'a' + 10;
    return -1;
}

} // namespace

Ball::Ball(std::uint32_t p, int d, int L) : p_(p), d_(d), L_(L) {
    if (!is_prime(p)) fail("not-prime", "p must be a prime >= 2");
    if (d < 1) fail("bad-dimension", "dimension must be >= 1");
    start_.assign(static_cast<std::size_t>(d), 0);
    digits_.assign(static_cast<std::size_t>(d), {});
}

void Ball::normalize() {
    for (int i = 0; i < d_; ++i) {
        auto& dg = digits_[static_cast<std::size_t>(i)];
        int& st = start_[static_cast<std::size_t>(i)];
        // drop digits at positions >= L (absorbed by the ball)
        if (st + static_cast<int>(dg.size()) > L_) {
            int keep = L_ - st;
            if (keep < 0) keep = 0;
            dg.resize(static_cast<std::size_t>(keep));
        }
        std::size_t lo = 0;
        while (lo < dg.size() && dg[lo] == 0) ++lo;
        if (lo == dg.size()) {
            dg.clear();
            st = 0;
            continue;
        }
        if (lo > 0) {
            dg.erase(dg.begin(), dg.begin() + static_cast<long>(lo));
            st += static_cast<int>(lo);
        }
        while (!dg.empty() && dg.back() == 0) dg.pop_back();
    }
}

Ball Ball::from_point(const PAdicVec& x, int L) {
    Ball b(x.prime(), x.dim(), L);
    for (int i = 0; i < x.dim(); ++i) {
        const PAdic& c = x[i];
        if (c.known_to() < L)
            fail("insufficient-precision",
                 "point is not known below level " + std::to_string(L));
        if (c.is_zero()) continue;
        int lo = c.lowest_position();
        if (lo >= L) continue;
        std::vector<std::uint32_t> dg;
        for (int pos = lo; pos < L; ++pos) dg.push_back(c.digit_at(pos));
        b.start_[static_cast<std::size_t>(i)] = lo;
        b.digits_[static_cast<std::size_t>(i)] = std::move(dg);
    }
    b.normalize();
    return b;
}

std::uint32_t Ball::center_digit(int coord, int pos) const {
    const auto& dg = digits_[static_cast<std::size_t>(coord)];
    if (dg.empty() || pos < start_[static_cast<std::size_t>(coord)]) return 0;
    std::size_t i = static_cast<std::size_t>(pos - start_[static_cast<std::size_t>(coord)]);
    return i < dg.size() ? dg[i] : 0;
}

int Ball::coord_floor(int coord) const {
    const auto& dg = digits_[static_cast<std::size_t>(coord)];
    return dg.empty() ? L_ : start_[static_cast<std::size_t>(coord)];
}

PAdicVec Ball::center(int extra_window) const {
    std::vector<PAdic> comps;
    comps.reserve(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) {
        const auto& dg = digits_[static_cast<std::size_t>(i)];
        int known = std::min(L_ + extra_window, PAdic::kExactLimit);
        if (dg.empty()) {
            comps.push_back(PAdic::from_digits(p_, 0, {}, known));
        } else {
            comps.push_back(PAdic::from_digits(p_, start_[static_cast<std::size_t>(i)], dg, known));
        }
    }
    return PAdicVec(std::move(comps));
}

bool Ball::contains_point(const PAdicVec& x) const {
    if (x.prime() != p_ || x.dim() != d_) return false;
    if (x.known_to() < L_)
        fail("insufficient-precision", "membership needs digits below the ball level");
    for (int i = 0; i < d_; ++i) {
        const PAdic& c = x[i];
        int lo = std::min(c.is_zero() ? L_ : c.lowest_position(),
                          digits_[static_cast<std::size_t>(i)].empty()
                              ? L_
                              : start_[static_cast<std::size_t>(i)]);
        for (int pos = lo; pos < L_; ++pos)
            if (c.digit_at(pos) != center_digit(i, pos)) return false;
    }
    return true;
}

bool Ball::contains(const Ball& o) const {
    if (o.p_ != p_ || o.d_ != d_ || o.L_ < L_) return false;
    for (int i = 0; i < d_; ++i) {
        int lo = std::min(digits_[static_cast<std::size_t>(i)].empty() ? L_ : start_[static_cast<std::size_t>(i)],
                          o.digits_[static_cast<std::size_t>(i)].empty() ? L_ : o.start_[static_cast<std::size_t>(i)]);
        for (int pos = lo; pos < L_; ++pos)
            if (center_digit(i, pos) != o.center_digit(i, pos)) return false;
    }
    return true;
}

Ball Ball::parent() const {
    Ball b = *this;
    b.L_ = L_ - 1;
    b.normalize();
    return b;
}

Ball Ball::ancestor(int level) const {
    if (level > L_) fail("bad-level", "ancestor level must not refine the ball");
    Ball b = *this;
    b.L_ = level;
    b.normalize();
    return b;
}

Ball Ball::child(const FpVec& cls) const {
    if (static_cast<int>(cls.size()) != d_) fail("bad-dimension", "class dimension mismatch");
    Ball b = *this;
    b.L_ = L_ + 1;
    for (int i = 0; i < d_; ++i) {
        std::uint32_t t = cls[static_cast<std::size_t>(i)];
        if (t >= p_) fail("malformed-literal", "class residue out of range");
        if (t == 0) continue;
        auto& dg = b.digits_[static_cast<std::size_t>(i)];
        int& st = b.start_[static_cast<std::size_t>(i)];
        if (dg.empty()) {
            st = L_;
            dg = {t};
        } else {
            dg.resize(static_cast<std::size_t>(L_ - st), 0);
            dg.push_back(t);
        }
    }
    b.normalize();
    return b;
}

Ball Ball::child_by_index(std::uint64_t idx) const {
    return child(class_from_index(p_, d_, idx));
}

std::uint64_t Ball::child_count() const {
    std::uint64_t n = 1;
    for (int i = 0; i < d_; ++i) n *= p_;
    return n;
}

std::vector<Ball> Ball::children() const {
    std::vector<Ball> out;
    std::uint64_t n = child_count();
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(child_by_index(i));
    return out;
}

FpVec Ball::class_of_point(const PAdicVec& x) const {
    if (!contains_point(x)) fail("not-in-ball", "point lies outside the ball");
    if (x.known_to() < L_ + 1)
        fail("insufficient-precision", "class extraction needs the digit at the ball level");
    FpVec cls(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) cls[static_cast<std::size_t>(i)] = x[i].digit_at(L_);
    return cls;
}

FpVec Ball::class_in_parent() const {
    FpVec cls(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i) cls[static_cast<std::size_t>(i)] = center_digit(i, L_ - 1);
    return cls;
}

Ball Ball::scaled(int gamma) const {
    Ball b = *this;
    b.L_ = L_ + gamma;
    for (int i = 0; i < d_; ++i)
        if (!b.digits_[static_cast<std::size_t>(i)].empty()) b.start_[static_cast<std::size_t>(i)] += gamma;
    return b;
}

std::string Ball::encode() const {
    if (p_ > 36) fail("unsupported-radix", "ball encoding supports p <= 36");
    std::ostringstream os;
    os << "p=" << p_ << ";d=" << d_ << ";L=" << L_ << ";c=";
    for (int i = 0; i < d_; ++i) {
        if (i > 0) os << ';';
        const auto& dg = digits_[static_cast<std::size_t>(i)];
        if (dg.empty()) continue;
        // digits from the lowest nonzero position up to L-1, low to high
        for (int pos = start_[static_cast<std::size_t>(i)]; pos < L_; ++pos)
            os << kDigitChars[center_digit(i, pos)];
    }
    return os.str();
}

Ball Ball::decode(const std::string& text) {
    auto expect = [&](bool ok, const std::string& why) {
        if (!ok) fail("malformed-ball", why + " in '" + text + "'");
    };
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (true) {
        auto semi = text.find(';', pos);
        if (semi == std::string::npos) {
            parts.push_back(text.substr(pos));
            break;
        }
        parts.push_back(text.substr(pos, semi - pos));
        pos = semi + 1;
    }
    expect(parts.size() >= 4, "expected p=,d=,L=,c= fields");
    expect(parts[0].rfind("p=", 0) == 0, "missing p=");
    expect(parts[1].rfind("d=", 0) == 0, "missing d=");
    expect(parts[2].rfind("L=", 0) == 0, "missing L=");
    expect(parts[3].rfind("c=", 0) == 0, "missing c=");
    std::uint32_t p = static_cast<std::uint32_t>(std::stoul(parts[0].substr(2)));
    int d = std::stoi(parts[1].substr(2));
    int L = std::stoi(parts[2].substr(2));
    expect(static_cast<int>(parts.size()) == 3 + d, "expected one coordinate block per dimension");
    Ball b(p, d, L);
    for (int i = 0; i < d; ++i) {
        std::string coord = (i == 0) ? parts[3].substr(2) : parts[static_cast<std::size_t>(3 + i)];
        if (coord.empty()) continue;
        int start = L - static_cast<int>(coord.size());
        std::vector<std::uint32_t> dg;
        for (char c : coord) {
            int dig = digit_from_char(c);
            expect(dig >= 0 && static_cast<std::uint32_t>(dig) < p, "digit out of range");
            dg.push_back(static_cast<std::uint32_t>(dig));
        }
        b.start_[static_cast<std::size_t>(i)] = start;
        b.digits_[static_cast<std::size_t>(i)] = std::move(dg);
    }
    b.normalize();
    return b;
}

bool Ball::operator<(const Ball& o) const {
    if (L_ != o.L_) return L_ < o.L_;
    return encode() < o.encode();
}

std::uint64_t class_index(std::uint32_t p, const FpVec& cls) {
    std::uint64_t idx = 0;
    for (std::uint32_t t : cls) idx = idx * p + t;
    return idx;
}

FpVec class_from_index(std::uint32_t p, int d, std::uint64_t idx) {
    FpVec cls(static_cast<std::size_t>(d), 0);
    for (int i = d; i-- > 0;) {
        cls[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    return cls;
}

Ball sup(const Ball& a, const Ball& b) {
    if (a.prime() != b.prime() || a.dim() != b.dim())
        fail("prime-mismatch", "sup needs matching p and d");
    int lmin = std::min(a.level(), b.level());
    // first position below lmin where the centers differ
    int diff = lmin;
    for (int i = 0; i < a.dim(); ++i) {
        int lo = std::min({lmin, a.coord_floor(i), b.coord_floor(i)});
        for (int pos = lo; pos < diff; ++pos) {
            if (a.center_digit(i, pos) != b.center_digit(i, pos)) {
                diff = pos;
                break;
            }
        }
    }
    Ball base = (a.level() <= b.level()) ? a : b;
    Ball r = base;
    while (r.level() > diff) r = r.parent();
    return r;
}

Ball sup(const PAdicVec& x, const PAdicVec& y) {
    PAdicVec diff = x.sub(y);
    if (diff.is_zero())
        fail("equal-points", "sup of two equal points is not a ball");
    int v = -*diff.norm_exponent(); // lowest differing position
    return Ball::from_point(x, v);
}

FpVec tangent_class(const Ball& B, const PAdicVec& x, const PAdicVec& x_B) {
    if (!B.contains_point(x) || !B.contains_point(x_B))
        fail("not-in-ball", "tangent_class arguments must lie in the ball");
    PAdicVec diff = x.sub(x_B);
    if (diff.known_to() < B.level() + 1)
        fail("insufficient-precision", "tangent class needs the digit at the ball level");
    FpVec cls(static_cast<std::size_t>(B.dim()));
    for (int i = 0; i < B.dim(); ++i)
        cls[static_cast<std::size_t>(i)] = diff[i].digit_at(B.level());
    return cls;
}

FpVec tangent_class(const Ball& B, const PAdicVec& x) {
    return B.class_of_point(x);
}

FpVec canonical_direction(std::uint32_t p, const FpVec& k1) {
    // scale so the first nonzero coordinate is 1
    std::uint32_t lead = 0;
    for (std::uint32_t t : k1)
        if (t != 0) {
            lead = t;
            break;
        }
    if (lead == 0) fail("invalid-direction", "k1 must be nonzero");
    // lead^(p-2) mod p
    std::uint64_t inv = 1, b = lead, e = p - 2;
    while (e) {
        if (e & 1) inv = (inv * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return fp_scale(p, static_cast<std::uint32_t>(inv), k1);
}

SetS build_set_S(const Ball& B, const FpVec& k1, const FpVec& b0_class) {
    if (static_cast<int>(k1.size()) != B.dim() || static_cast<int>(b0_class.size()) != B.dim())
        fail("bad-dimension", "class dimension mismatch");
    if (fp_is_zero(k1)) fail("invalid-direction", "k1 must be nonzero");
    const std::uint32_t p = B.prime();
    SetS s;
    s.parent = B;
    s.k1 = canonical_direction(p, k1);
    s.b0_class = b0_class;
    for (std::uint32_t j = 1; j < p; ++j)
        s.members.push_back(B.child(fp_add(p, b0_class, fp_scale(p, j, s.k1))));
    std::sort(s.members.begin(), s.members.end());
    return s;
}

SetS build_set_S(const Ball& B, const FpVec& k1, const Ball& B0) {
    if (!(B0.parent() == B)) fail("not-in-ball", "B0 must be a child of B");
    return build_set_S(B, k1, B0.class_in_parent());
}

SetS recover_from_S(const std::vector<Ball>& members) {
    if (members.empty()) fail("not-a-set-S", "empty member list");
    const Ball parent = members[0].parent();
    const std::uint32_t p = parent.prime();
    const int d = parent.dim();
    if (members.size() != static_cast<std::size_t>(p - 1))
        fail("not-a-set-S", "a set S has exactly p-1 member balls");
    std::vector<FpVec> classes;
    std::set<std::uint64_t> seen;
    for (const Ball& m : members) {
        if (!(m.parent() == parent)) fail("not-a-set-S", "members are not siblings");
        FpVec cls = m.class_in_parent();
        if (!seen.insert(class_index(p, cls)).second)
            fail("not-a-set-S", "duplicate member ball");
        classes.push_back(std::move(cls));
    }

    FpVec k1;
    FpVec b0;
    if (p == 2) {
        // one member; the line direction is forced only for d == 1, so pick
        // the lexicographically smallest sibling class as B0
        const FpVec& t1 = classes[0];
        b0.assign(static_cast<std::size_t>(d), 0);
        if (fp_is_zero(fp_sub(p, t1, b0))) {
            b0.back() = 1; // t1 == 0: take class (0,...,0,1)
        }
        k1 = fp_sub(p, t1, b0);
    } else {
        // direction from two member classes, then locate the missing point
        k1 = canonical_direction(p, fp_sub(p, classes[1], classes[0]));
        std::set<std::uint64_t> line;
        for (std::uint32_t c = 0; c < p; ++c)
            line.insert(class_index(p, fp_add(p, classes[0], fp_scale(p, c, k1))));
        for (const FpVec& cls : classes)
            if (line.erase(class_index(p, cls)) == 0)
                fail("not-a-set-S", "member balls are not collinear");
        if (line.size() != 1) fail("not-a-set-S", "member balls are not collinear");
        b0 = class_from_index(p, d, *line.begin());
    }

    SetS s = build_set_S(parent, k1, b0);
    std::vector<Ball> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    if (s.members != sorted) fail("not-a-set-S", "member list is not reproducible");
    return s;
}

std::vector<Ball> subballs_at_level(const Ball& B, int out_level) {
    if (out_level < B.level()) fail("bad-level", "output level must refine the ball");
    std::vector<Ball> cur = {B};
    for (int l = B.level(); l < out_level; ++l) {
        std::vector<Ball> next;
        next.reserve(cur.size() * B.child_count());
        for (const Ball& b : cur)
            for (const Ball& c : b.children()) next.push_back(c);
        cur = std::move(next);
    }
    return cur;
}

std::vector<Ball> span_region(const PAdicVec& x0, const std::vector<PAdicVec>& basis,
                              RegionKind region, int L, int out_level,
                              std::uint64_t enumeration_cap) {
    const std::uint32_t p = x0.prime();
    const int d = x0.dim();
    if (static_cast<int>(basis.size()) != d) fail("degenerate-basis", "basis must have d vectors");
    if (out_level < L) fail("bad-level", "output level must refine the region level");

    // norm and mod-p generation conditions
    FpMat K(p, d);
    for (int l = 0; l < d; ++l) {
        const PAdicVec& k = basis[static_cast<std::size_t>(l)];
        auto e = k.norm_exponent();
        int want = (region == RegionKind::tube && l > 0) ? -1 : 0;
        if (!e || *e != want)
            fail("degenerate-basis", "basis vector " + std::to_string(l + 1) + " has the wrong norm");
        for (int r = 0; r < d; ++r) {
            int pos = (region == RegionKind::tube && l > 0) ? 1 : 0;
            K.at(r, l) = k[r].digit_at(pos);
        }
    }
    if (K.det() == 0) fail("degenerate-basis", "basis does not generate F_p^d mod p");

    const int digits_per_coord = out_level - L;
    std::uint64_t per_coord = 1;
    for (int i = 0; i < digits_per_coord; ++i) {
        per_coord *= p;
        if (per_coord > enumeration_cap) fail("enumeration-cap", "z enumeration exceeds the cap");
    }
    std::uint64_t total = 1;
    for (int l = 0; l < d; ++l) {
        total *= per_coord;
        if (total > enumeration_cap) fail("enumeration-cap", "z enumeration exceeds the cap");
    }

    const int zwin = digits_per_coord + 8;
    std::set<Ball> out;
    for (std::uint64_t n = 0; n < total; ++n) {
        std::uint64_t rem = n;
        bool want = true;
        std::vector<PAdic> z;
        z.reserve(static_cast<std::size_t>(d));
        bool leading_any = false;
        for (int l = 0; l < d; ++l) {
            std::uint64_t zi = rem % per_coord;
            rem /= per_coord;
            std::vector<std::uint32_t> dg(static_cast<std::size_t>(digits_per_coord), 0);
            std::uint64_t t = zi;
            for (int i = 0; i < digits_per_coord; ++i) {
                dg[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(t % p);
                t /= p;
            }
            if (!dg.empty() && dg[0] != 0) leading_any = true;
            if (region == RegionKind::tube && l == 0 && (dg.empty() || dg[0] == 0)) want = false;
            z.push_back(PAdic::from_digits(p, L, dg, L + zwin));
        }
        if (region == RegionKind::sphere && !leading_any) want = false;
        if (!want) continue;

        PAdicVec point = x0;
        for (int l = 0; l < d; ++l)
            point = point.add(basis[static_cast<std::size_t>(l)].scale(z[static_cast<std::size_t>(l)]));
        out.insert(Ball::from_point(point, out_level));
    }
    return {out.begin(), out.end()};
}

std::string tree_dot(const Ball& root, int depth) {
    std::ostringstream os;
    os << "digraph balls {\n  node [shape=box, fontname=\"monospace\"];\n";
    std::vector<Ball> frontier = {root};
    for (int l = 0; l < depth; ++l) {
        std::vector<Ball> next;
        for (const Ball& b : frontier) {
            for (const Ball& c : b.children()) {
                os << "  \"" << b.encode() << "\" -> \"" << c.encode() << "\";\n";
                next.push_back(c);
            }
        }
        frontier = std::move(next);
    }
    os << "}\n";
    return os.str();
}

} // namespace padic
