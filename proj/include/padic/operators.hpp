#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "padic/lc_function.hpp"

namespace padic {

// Gamma_p(-alpha) closed form (p^alpha - 1) / (1 - p^(-1-alpha)), alpha > 0.
// It is the multiplier putting the Vladimirov operator into integral form.
double gamma_p(double alpha, std::uint32_t p);

// Integration kernel over the tree of balls: an explicit per-ball table for
// levels >= tail_from, and the power-law tail c * diameter^-(1+alpha) for
// coarser balls.  alpha > 0 keeps the coarse sums geometric.
struct KernelSpec {
    std::map<std::string, Complex> table; // encode_ball -> value
    Complex tail_c{0.0, 0.0};
    double tail_alpha = 1.0;
    int tail_from = kPureTail;

    static constexpr int kPureTail = std::numeric_limits<int>::max() / 4;

    void validate() const;
    static KernelSpec vladimirov(std::uint32_t p, double alpha);
};

// Evaluation view handed to the operators: a callable plus the tail data the
// closed-form coarse sums need.  Kernel transports compose the callable with
// image_ball and re-index the tail.
struct KernelView {
    std::function<Complex(const Ball&)> eval;
    Complex tail_c{0.0, 0.0};
    double alpha = 1.0;
    int tail_from = KernelSpec::kPureTail;
};

KernelView view_of(const KernelSpec& F);
// F(phi(.)): table queried through image_ball, power tail re-indexed by the
// diameter shift p^-gamma.
KernelView transported_view(const KernelView& F, const Morphism& phi);
// Negative control: multiplies every kernel value by (1 + rel).
KernelView corrupted_view(const KernelView& F, double rel);

// Non-vanishing direction k1(B) in F_p^d per ball.
class VectorField {
public:
    static VectorField seeded(std::uint32_t p, int d, std::uint64_t seed);
    static VectorField from_table(std::uint32_t p, int d, std::map<std::string, FpVec> entries,
                                  FpVec default_k1);

    std::uint32_t prime() const { return p_; }
    int dim() const { return d_; }
    bool is_seeded() const { return seeded_; }
    std::uint64_t seed() const { return seed_; }
    const std::map<std::string, FpVec>& entries() const { return entries_; }
    const FpVec& default_k1() const { return default_; }

    FpVec k1(const Ball& B) const;
    std::function<FpVec(const Ball&)> view() const;

private:
    std::uint32_t p_ = 2;
    int d_ = 1;
    bool seeded_ = true;
    std::uint64_t seed_ = 0;
    std::map<std::string, FpVec> entries_;
    FpVec default_;
};

using FieldView = std::function<FpVec(const Ball&)>;

// Evaluation window: operator outputs need not have compact support, so
// values are reported on an explicit ball at an explicit resolution.
struct Window {
    Ball ball;
    int resolution = 0;
};

// Window whose phi-image covers supp(f) widened by `margin` levels: the
// natural probe region for the transformation identities (elsewhere a
// mean-zero f produces vanishing operator values and the identities hold
// trivially).
Window preimage_window(const Morphism& phi, const LCFunction& f, int margin = 1);

// Vladimirov fractional derivative, d = 1, via its integral form.
Complex vladimirov_at(double alpha, const LCFunction& f, const PAdicVec& x);
LCFunction vladimirov(double alpha, const LCFunction& f, const Window& w);

// D_F f(x) = integral F(sup(x,y)) (f(x) - f(y)) dy, any d (radial shells).
Complex kernel_op_at(const KernelView& F, const LCFunction& f, const PAdicVec& x);
LCFunction kernel_op(const KernelView& F, const LCFunction& f, const Window& w);
LCFunction kernel_op(const KernelSpec& F, const LCFunction& f, const Window& w);

// Pseudodifferential vector field: per level, the integral runs over the set
// S determined by (k1(B), child of B containing x).
Complex vf_op_at(const KernelView& F, const FieldView& field, const LCFunction& f,
                 const PAdicVec& x);
LCFunction vf_op(const KernelView& F, const VectorField& field, const LCFunction& f,
                 const Window& w);

// Eigenvalue of the Vladimirov operator on psi_{gamma n j}: p^(alpha(1-gamma)).
double wavelet_eigenvalue(std::uint32_t p, double alpha, int gamma);

struct ResidualReport {
    double max_abs_diff = 0.0;
    double max_abs_value = 0.0; // largest |lhs| seen: a vacuity guard
    std::string argmax_cell;
    Complex lhs_at_argmax{0.0, 0.0};
    Complex rhs_at_argmax{0.0, 0.0};
    int cells = 0;
};

// Phi . D_F = p^-gamma D_{F(phi(.))} . Phi, both sides evaluated on the
// window.  transport_corruption != 0 rescales the transported kernel only
// (a negative control: the identity must then fail).
ResidualReport verify_transform_rule(const Morphism& phi, const KernelView& F,
                                     const LCFunction& f, const Window& w,
                                     double transport_corruption = 0.0);
// D^alpha . Phi = p^(-gamma alpha) Phi . D^alpha.
ResidualReport verify_chain_rule(const Morphism& phi, double alpha, const LCFunction& f,
                                 const Window& w);
// Phi . D_{F,k} = D_{F(phi(.)), phi^-1 k(phi(.))} . Phi for mod-p-affine
// isometries phi.
ResidualReport verify_covariance(const Morphism& phi, const KernelView& F,
                                 const VectorField& field, const LCFunction& f, const Window& w);

} // namespace padic
