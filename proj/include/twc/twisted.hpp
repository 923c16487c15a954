#pragma once

#include <optional>

#include "twc/cech.hpp"

namespace twc {

/// Graded sheaf E together with a degree-1 endomorphism element a whose pieces
/// a^{k,1-k} satisfy the flatness equation delta a + a a = 0 and whose (1,0)
/// piece is invertible up to homotopy.
struct TwistedComplex {
    SheafPtr sheaf;
    CechElement a;  // degree 1, E -> E

    friend bool operator==(const TwistedComplex& s, const TwistedComplex& t) {
        return *s.sheaf == *t.sheaf && s.a == t.a;
    }
};

using TwistedPtr = std::shared_ptr<const TwistedComplex>;

TwistedPtr make_twisted(SheafPtr sheaf, CechElement a);

/// Degree-m morphism (E,a) -> (F,b): the family theta^{k,m-k} as one element.
struct TwistedMorphism {
    TwistedPtr source, target;
    CechElement el;

    int degree() const { return el.degree(); }
    bool is_zero() const { return el.is_zero(); }

    friend bool operator==(const TwistedMorphism& a, const TwistedMorphism& b) {
        return *a.source == *b.source && *a.target == *b.target && a.el == b.el;
    }
};

TwistedMorphism identity_morphism(const TwistedPtr& t);
TwistedMorphism zero_morphism(const TwistedPtr& s, const TwistedPtr& t, int degree);
TwistedMorphism morphism_add(const TwistedMorphism& a, const TwistedMorphism& b);
TwistedMorphism morphism_sub(const TwistedMorphism& a, const TwistedMorphism& b);
TwistedMorphism morphism_scale(const TwistedMorphism& a, const Rational& s);
/// phi . psi (apply psi first)
TwistedMorphism morphism_compose(const TwistedMorphism& phi, const TwistedMorphism& psi);

/// delta a + a a, computed both through the algebra operations and through the
/// direct per-(k, j) expansion; the two routes are asserted equal.
CechElement mc_residual(const TwistedComplex& t);

/// d theta = delta theta + b theta - (-1)^m theta a, cross-checked against the
/// direct componentwise expansion. Endpoints must satisfy the flatness equation.
TwistedMorphism morphism_diff(const TwistedMorphism& theta);

/// Per-edge quasi-isomorphism status of a^{1,0}: required at degenerate edges,
/// informative elsewhere. Precondition: mc_residual(t) = 0.
ValidationReport check_nondegenerate(const TwistedComplex& t);

/// Flatness + nondegeneracy + window-size policy (N >= amplitude + 2).
ValidationReport validate_twisted(const TwistedComplex& t);

TwistedPtr pullback_twisted(const SimplicialMap& f, const TwistedComplex& t);
TwistedMorphism pullback_morphism(const SimplicialMap& f, const TwistedMorphism& m,
                                  const TwistedPtr& pulled_src, const TwistedPtr& pulled_tgt);

/// Closed, degree 0, and the (0,0) component is a pointwise quasi-isomorphism.
bool is_weak_equivalence(const TwistedMorphism& phi);

/// The underlying complex (E(x), a^{0,1}(x)) at a point of U_0.
ChainComplex complex_at_point(const TwistedComplex& t, int x);

struct HoInverse {
    TwistedMorphism psi;  // closed, degree 0, target -> source
    TwistedMorphism eta;  // degree -1: psi phi - id = d eta
    TwistedMorphism omega;  // degree -1: phi psi - id = d omega
};

/// Homotopy-category inverse of a closed degree-0 morphism, found by solving
/// the affine system in (psi, eta, omega) over the truncated morphism spaces.
/// Returns nullopt exactly when the system is infeasible; throws
/// TruncationError when the window is too small to close the system.
std::optional<HoInverse> ho_invert(const TwistedMorphism& phi);

/// Basis bookkeeping of a truncated morphism space (exposed for tests).
struct MorphismBasis {
    TwistedPtr source, target;
    int degree;
    struct Slot {
        int p, x, n, row, col;
    };
    std::vector<Slot> slots;

    static MorphismBasis build(const TwistedPtr& s, const TwistedPtr& t, int degree);
    int dim() const { return static_cast<int>(slots.size()); }
    std::vector<Rational> vectorize(const TwistedMorphism& m) const;
    TwistedMorphism devectorize(const std::vector<Rational>& v) const;
};

}  // namespace twc
