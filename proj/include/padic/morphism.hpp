#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "padic/ball.hpp"
#include "padic/fp_linalg.hpp"
#include "padic/padic.hpp"
#include "padic/rng.hpp"

namespace padic {

// Bijection of the tangent module F_p^d attached to one ball: how the
// children of a ball map to the children of its image ball.
class ChildAction {
public:
    ChildAction() = default;
    static ChildAction identity(std::uint32_t p, int d);
    static ChildAction from_permutation(std::uint32_t p, int d, std::vector<std::uint32_t> map);
    static ChildAction from_affine(const FpMat& A, const FpVec& b);

    std::uint32_t prime() const { return p_; }
    int dim() const { return d_; }
    std::uint64_t size() const { return map_.size(); }

    FpVec apply(const FpVec& cls) const;
    std::uint64_t apply_index(std::uint64_t idx) const { return map_.at(idx); }

    // this after inner
    ChildAction compose_after(const ChildAction& inner) const;
    ChildAction inverse() const;

    bool is_identity() const;
    bool is_affine() const { return affine_.has_value(); }
    const FpMat& linear_part() const;
    const FpVec& translation_part() const;

    bool operator==(const ChildAction& o) const { return p_ == o.p_ && d_ == o.d_ && map_ == o.map_; }
    bool operator!=(const ChildAction& o) const { return !(*this == o); }

    const std::vector<std::uint32_t>& table() const { return map_; }

private:
    void derive_affine();

    std::uint32_t p_ = 2;
    int d_ = 1;
    std::vector<std::uint32_t> map_; // class index -> class index
    std::optional<std::pair<FpMat, FpVec>> affine_;
};

// Per-ball child actions defining an isometry of Q_p^d.  Balls with level
// <= anchor_level() are fixed and actions strictly above the anchor (at
// coarser levels) are the identity, which makes any per-ball assignment a
// well-defined global isometry.
class IsometryProvider : public std::enable_shared_from_this<IsometryProvider> {
public:
    virtual ~IsometryProvider() = default;

    virtual std::uint32_t prime() const = 0;
    virtual int dim() const = 0;
    virtual int anchor_level() const = 0;
    virtual ChildAction action(const Ball& B) const = 0;

    virtual Ball image_ball(const Ball& B) const;
    virtual PAdicVec apply_point(const PAdicVec& x) const;
    virtual std::shared_ptr<const IsometryProvider> inverted() const;
};

using ProviderPtr = std::shared_ptr<const IsometryProvider>;

enum class SeededMode { permutation, affine };

struct SeededIsometrySpec {
    std::uint32_t p = 2;
    int d = 1;
    std::uint64_t seed = 0;
    SeededMode mode = SeededMode::permutation; // d >= 2 defaults to affine
    int anchor = kDefaultSeededAnchor;

    static constexpr int kDefaultSeededAnchor = -12;
};

struct TableIsometrySpec {
    std::uint32_t p = 2;
    int d = 1;
    std::map<std::string, ChildAction> actions; // key: encode_ball
    std::optional<int> anchor;                  // default: min level among keys
};

ProviderPtr make_identity_provider(std::uint32_t p, int d);
ProviderPtr make_seeded_provider(const SeededIsometrySpec& spec);
ProviderPtr make_table_provider(const TableIsometrySpec& spec);
ProviderPtr make_composed_provider(std::vector<ProviderPtr> parts_in_application_order);
// d = 1: x -> u x + b with |u|_p = 1.
ProviderPtr make_affine_provider(const PAdic& u, const PAdic& b);

// A tree automorphism from the parabolic group: a finite composition of
// dilations by powers of p and isometries, held lazily and normalized on
// demand into the unique product dilation(gamma) . eta.
class Morphism {
public:
    Morphism() = default;

    static Morphism identity(std::uint32_t p, int d);
    static Morphism dilation(std::uint32_t p, int d, int gamma);
    static Morphism isometry(ProviderPtr provider);

    std::uint32_t prime() const { return p_; }
    int dim() const { return d_; }
    // Sum of composed dilation exponents; diameters scale by p^(-gamma).
    int gamma() const;
    bool has_isometry_part() const;

    PAdicVec apply_point(const PAdicVec& x) const;
    Ball image_ball(const Ball& B) const;
    // Induced map on F_p^d between children(B) and children(image_ball(B)).
    ChildAction tangent_map(const Ball& B) const;

    Morphism inverse() const;

    // Lemma-3 normal form phi = dilation(gamma) . eta with eta an isometry.
    std::pair<int, Morphism> parabolic_normalize() const;

    friend Morphism compose(const Morphism& outer, const Morphism& inner);

private:
    struct Atom {
        int gamma = 0;       // used when iso == nullptr
        ProviderPtr iso;     // isometry atom when non-null
    };

    std::uint32_t p_ = 2;
    int d_ = 1;
    std::vector<Atom> atoms_; // application order
};

// compose(phi, psi): apply psi first, then phi.
Morphism compose(const Morphism& outer, const Morphism& inner);

Morphism make_isometry(const SeededIsometrySpec& spec);
Morphism make_isometry(const TableIsometrySpec& spec);
Morphism make_dilation(std::uint32_t p, int d, int gamma);

// Affine map x -> a + u x on Q_p (u != 0); a ball-morphism with dilation
// exponent v(u) and a continuously differentiable derivative u.
struct DifferentiableSpec {
    PAdic a;
    PAdic u;
};

Morphism make_affine_morphism(const DifferentiableSpec& spec);
// |f'(x)| = |u|_p; exponent form alongside the double.
double derivative_norm(const DifferentiableSpec& spec);
int derivative_norm_exponent(const DifferentiableSpec& spec);

struct CheckReport {
    bool pass = true;
    std::string counterexample;
    int pairs_checked = 0;
    int balls_checked = 0;
};

// Samples point pairs and balls; asserts exact distance and diameter
// preservation plus the orispheric fixed-chain property.
CheckReport is_isometry_check(const Morphism& phi, int sample_count, int level_lo, int level_hi,
                              std::uint64_t seed);

// Samples balls and verifies every tangent map is affine with an invertible
// linear part.
CheckReport is_mod_p_affine_check(const Morphism& phi, int sample_count, int level_lo,
                                  int level_hi, std::uint64_t seed);

// Deterministic sample point (used by the checks and the harness).
PAdicVec random_point(SplitMix64& gen, std::uint32_t p, int d, int digits, int vmin, int vmax);

} // namespace padic
