#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padic/fp_linalg.hpp"
#include "padic/padic.hpp"

namespace padic {

// Vertex of the tree of balls in Q_p^d.
//
// A ball of level L has diameter p^(-L) and Haar measure p^(-L*d); its
// children are the p^d maximal subballs, at level L+1.  The canonical
// representation keeps, per coordinate, the center digits at positions
// below L (positions at or above L are absorbed by the ball).  Two balls
// are equal iff (p, d, L, center digits) agree.
class Ball {
public:
    Ball() : p_(2), d_(1), L_(0) {}
    Ball(std::uint32_t p, int d, int L);

    static Ball unit_ball(std::uint32_t p, int d) { return Ball(p, d, 0); }
    // Smallest-level-L ball containing x.  Requires x to be known below L.
    static Ball from_point(const PAdicVec& x, int L);

    std::uint32_t prime() const { return p_; }
    int dim() const { return d_; }
    int level() const { return L_; }
    // log_p of the diameter is -level; log_p of the Haar measure:
    int measure_exponent() const { return -L_ * d_; }

    std::uint32_t center_digit(int coord, int pos) const;
    // Lowest position with a stored center digit (level() if the coordinate
    // center is zero).
    int coord_floor(int coord) const;
    // Canonical center as an exact point, known below L + extra_window.
    PAdicVec center(int extra_window = PAdic::kDefaultPrecision) const;

    bool contains_point(const PAdicVec& x) const;
    bool contains(const Ball& other) const;

    Ball parent() const;
    // Containing ball at a coarser level (level <= this->level()).
    Ball ancestor(int level) const;
    Ball child(const FpVec& cls) const;
    Ball child_by_index(std::uint64_t idx) const;
    std::vector<Ball> children() const; // ordered by lexicographic class
    std::uint64_t child_count() const;  // p^d

    // Class of the child of *this containing x (digit vector at position L).
    FpVec class_of_point(const PAdicVec& x) const;
    // Class of this ball inside its parent.
    FpVec class_in_parent() const;

    // Image under multiplication by p^gamma (level shifts by +gamma).
    Ball scaled(int gamma) const;

    // Frozen injective encoding "p=..;d=..;L=..;c=..;..".
    std::string encode() const;
    static Ball decode(const std::string& text);

    bool operator==(const Ball& o) const {
        return p_ == o.p_ && d_ == o.d_ && L_ == o.L_ && start_ == o.start_ && digits_ == o.digits_;
    }
    bool operator!=(const Ball& o) const { return !(*this == o); }
    // Order by (level, encoding); used for deterministic enumeration.
    bool operator<(const Ball& o) const;

private:
    void normalize();

    std::uint32_t p_;
    int d_;
    int L_;
    std::vector<int> start_;                       // per coord, lowest stored position
    std::vector<std::vector<std::uint32_t>> digits_; // per coord, low to high, trimmed
};

// Lexicographic index of a tangent class (first coordinate major).
std::uint64_t class_index(std::uint32_t p, const FpVec& cls);
FpVec class_from_index(std::uint32_t p, int d, std::uint64_t idx);
// Representative of F_p^* k1 with first nonzero coordinate 1.
FpVec canonical_direction(std::uint32_t p, const FpVec& k1);

// Minimal ball containing both arguments.
Ball sup(const Ball& a, const Ball& b);
// Minimal ball containing two distinct points.
Ball sup(const PAdicVec& x, const PAdicVec& y);

// T_B(x) relative to a reference point x_B in B: the digit vector of
// x - x_B at position level(B).
FpVec tangent_class(const Ball& B, const PAdicVec& x, const PAdicVec& x_B);
// With the canonical center as reference the map is plain digit extraction.
FpVec tangent_class(const Ball& B, const PAdicVec& x);

// The set S of §-part-3 type: the p-1 children of B on the k1-line through
// the distinguished child B0, excluding B0 itself.
struct SetS {
    Ball parent;
    FpVec k1;        // canonical representative, first nonzero coordinate 1
    FpVec b0_class;  // class of the distinguished child (not a member)
    std::vector<Ball> members; // sorted by class index

    bool operator==(const SetS& o) const { return members == o.members; }
    bool operator!=(const SetS& o) const { return !(*this == o); }
};

SetS build_set_S(const Ball& B, const FpVec& k1, const FpVec& b0_class);
SetS build_set_S(const Ball& B, const FpVec& k1, const Ball& B0);
// Recover the defining pair from the member list (canonical representative).
SetS recover_from_S(const std::vector<Ball>& members);

enum class RegionKind { ball, sphere, tube };

// Enumerates {x0 + sum z_l k_l} over residue representatives of the stated
// z-region at output level `out_level`; returns the canonical level-out_level
// balls hit, sorted and deduplicated.  `L` is the level of the z-region
// (|z| <= p^(-L) for the ball region).
std::vector<Ball> span_region(const PAdicVec& x0, const std::vector<PAdicVec>& basis,
                              RegionKind region, int L, int out_level,
                              std::uint64_t enumeration_cap = 1000000);

// All level `out_level` subballs of B (out_level >= level(B)).
std::vector<Ball> subballs_at_level(const Ball& B, int out_level);

inline std::string encode_ball(const Ball& b) { return b.encode(); }

// DOT rendering of the subtree rooted at B down to the given depth.
std::string tree_dot(const Ball& root, int depth);

} // namespace padic
