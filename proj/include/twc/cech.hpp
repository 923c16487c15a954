#pragma once

#include <map>
#include <set>
#include <utility>

#include "twc/graded.hpp"
#include "twc/simplicial.hpp"

namespace twc {

/// Bounded free graded module assigned to every point of U_0.
struct GradedSheaf {
    SpacePtr base;
    BaseRing ring = BaseRing::rationals();
    std::vector<GradedModule> at;  // indexed by points of U_0

    const GradedModule& module(int pt) const { return at[pt]; }
    int dim(int pt, int n) const { return at[pt].dim(n); }
    bool has_deg(int n) const;
    int min_deg() const;  // over all points; only when some module is nonempty
    int max_deg() const;
    bool some_nonempty() const;

    void check() const;  // every point assigned, ring consistent

    friend bool operator==(const GradedSheaf& a, const GradedSheaf& b) {
        return *a.base == *b.base && a.ring == b.ring && a.at == b.at;
    }
};

using SheafPtr = std::shared_ptr<const GradedSheaf>;

/// Component key of a Hom-type element: simplicial degree p, simplex x in U_p,
/// internal source degree n. The block is a matrix E^n(back(x)) -> F^{n+q}(front(x))
/// with q = total degree - p.
struct CechKey {
    int p, x, n;
    auto operator<=>(const CechKey&) const = default;
};

/// Element of the bigraded Hom calculus, stored per total degree as the family
/// of its (p, q = degree - p) homogeneous pieces. Sparse: absent keys are zero,
/// zero blocks are erased, so equality is map equality.
class CechElement {
public:
    CechElement() = default;
    CechElement(SheafPtr source, SheafPtr target, int degree);

    static CechElement identity(const SheafPtr& e);
    static CechElement zero(SheafPtr source, SheafPtr target, int degree) {
        return CechElement(std::move(source), std::move(target), degree);
    }

    const SheafPtr& source() const { return src_; }
    const SheafPtr& target() const { return tgt_; }
    int degree() const { return deg_; }
    const SpacePtr& space() const { return src_->base; }
    const BaseRing& ring() const { return src_->ring; }

    int src_dim(int p, int x, int n) const;
    int tgt_dim(int p, int x, int n) const;

    Matrix at(int p, int x, int n) const;
    void set(int p, int x, int n, Matrix m);
    void add_to(int p, int x, int n, const Matrix& m);

    const std::map<CechKey, Matrix>& comps() const { return comps_; }
    std::set<int> levels() const;
    CechElement piece(int p) const;  // the (p, degree - p) homogeneous part
    bool is_zero() const { return comps_.empty(); }

    CechElement operator-() const;
    CechElement scaled(const Rational& s) const;
    friend CechElement operator+(const CechElement& a, const CechElement& b);
    friend CechElement operator-(const CechElement& a, const CechElement& b);

    friend bool operator==(const CechElement& a, const CechElement& b) {
        return *a.src_ == *b.src_ && *a.tgt_ == *b.tgt_ && a.deg_ == b.deg_ && a.comps_ == b.comps_;
    }
    friend bool operator!=(const CechElement& a, const CechElement& b) { return !(a == b); }

private:
    SheafPtr src_, tgt_;
    int deg_ = 0;
    std::map<CechKey, Matrix> comps_;
};

/// Module-type element: a vector in E^{degree-p}(front(x)) per (p, x).
class CechSection {
public:
    CechSection() = default;
    CechSection(SheafPtr sheaf, int degree);

    const SheafPtr& sheaf() const { return sheaf_; }
    int degree() const { return deg_; }

    int dim(int p, int x) const;  // rank of E^{degree-p}(front(x))
    std::vector<Rational> at(int p, int x) const;
    void set(int p, int x, std::vector<Rational> v);

    const std::map<std::pair<int, int>, std::vector<Rational>>& comps() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    CechSection scaled(const Rational& s) const;
    friend CechSection operator+(const CechSection& a, const CechSection& b);
    friend CechSection operator-(const CechSection& a, const CechSection& b);
    friend bool operator==(const CechSection& a, const CechSection& b) {
        return *a.sheaf_ == *b.sheaf_ && a.deg_ == b.deg_ && a.comps_ == b.comps_;
    }

private:
    SheafPtr sheaf_;
    int deg_ = 0;
    std::map<std::pair<int, int>, std::vector<Rational>> comps_;
};

/// (u v)^{p+r, q+s} = (-1)^{qr} (front^* u) (back^* v), summed over splits.
/// Throws TruncationError when a potentially nonzero component would land
/// beyond the truncation window.
CechElement compose(const CechElement& u, const CechElement& v);

/// Left module action, same shape and sign rule as compose.
CechSection act(const CechElement& u, const CechSection& c);

/// Interior-face differential of bidegree (1,0): Hom-type skips the 0th and
/// (p+1)th faces, module-type skips only the 0th.
CechElement delta_hom(const CechElement& u);
CechSection delta_section(const CechSection& c);

GradedSheaf pullback_sheaf(const SimplicialMap& f, const SheafPtr& e);
SheafPtr pullback_sheaf_ptr(const SimplicialMap& f, const SheafPtr& e);

/// (f^* u) at x = u at f(x), with the endpoint sheaves pulled back along f_0.
CechElement pullback_element(const SimplicialMap& f, const CechElement& u,
                             const SheafPtr& pulled_src, const SheafPtr& pulled_tgt);
CechElement pullback_element(const SimplicialMap& f, const CechElement& u);

/// Inverse of a total-degree-0 element whose level-0 blocks are invertible,
/// by the finite geometric series in the nilpotent higher part. The result is
/// verified: u u^{-1} = u^{-1} u = identity exactly.
CechElement invert_graded(const CechElement& u);

/// a' = u a u^{-1} - (delta u) u^{-1}; the flatness residual of a' is checked
/// exactly and a ConventionError is thrown if it is nonzero.
CechElement gauge_transform(const CechElement& u, const CechElement& a);

/// delta a + a a (degree-2 element); the flatness residual.
CechElement curvature(const CechElement& a);

}  // namespace twc
