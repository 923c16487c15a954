#include "twc/cech.hpp"

#include "twc/errors.hpp"

namespace twc {

// ---- GradedSheaf ---------------------------------------------------------------

bool GradedSheaf::has_deg(int n) const {
    for (const auto& m : at) {
        if (m.dim(n) > 0) return true;
    }
    return false;
}

bool GradedSheaf::some_nonempty() const {
    for (const auto& m : at) {
        if (!m.empty()) return true;
    }
    return false;
}

int GradedSheaf::min_deg() const {
    bool found = false;
    int best = 0;
    for (const auto& m : at) {
        if (m.empty()) continue;
        int v = m.min_degree();
        if (!found || v < best) best = v;
        found = true;
    }
    if (!found) throw StructuralError("sheaf: empty everywhere");
    return best;
}

int GradedSheaf::max_deg() const {
    bool found = false;
    int best = 0;
    for (const auto& m : at) {
        if (m.empty()) continue;
        int v = m.max_degree();
        if (!found || v > best) best = v;
        found = true;
    }
    if (!found) throw StructuralError("sheaf: empty everywhere");
    return best;
}

void GradedSheaf::check() const {
    if (!base) throw StructuralError("sheaf: no base space");
    if (static_cast<int>(at.size()) != base->level_size(0))
        throw StructuralError("sheaf: needs one module per point of U_0");
    for (const auto& m : at) {
        for (auto& [n, r] : m.dims) {
            if (r < 0) throw StructuralError("sheaf: negative rank");
        }
    }
}

namespace {

void require_same_space(const SheafPtr& a, const SheafPtr& b, const char* what) {
    if (!(*a->base == *b->base) || a->ring != b->ring)
        throw StructuralError(std::string(what) + ": endpoint sheaves live on different spaces/rings");
}

}  // namespace

// ---- CechElement ---------------------------------------------------------------

CechElement::CechElement(SheafPtr source, SheafPtr target, int degree)
    : src_(std::move(source)), tgt_(std::move(target)), deg_(degree) {
    require_same_space(src_, tgt_, "element");
}

CechElement CechElement::identity(const SheafPtr& e) {
    CechElement u(e, e, 0);
    const auto& space = *e->base;
    for (int x = 0; x < space.level_size(0); ++x) {
        for (auto& [n, r] : e->at[x].dims) {
            if (r > 0) u.comps_[{0, x, n}] = Matrix::identity(e->ring, r);
        }
    }
    return u;
}

int CechElement::src_dim(int p, int x, int n) const {
    return src_->dim(space()->back(p, 0, x), n);
}

int CechElement::tgt_dim(int p, int x, int n) const {
    return tgt_->dim(space()->front(p, 0, x), n + deg_ - p);
}

Matrix CechElement::at(int p, int x, int n) const {
    auto it = comps_.find({p, x, n});
    if (it != comps_.end()) return it->second;
    return Matrix(ring(), tgt_dim(p, x, n), src_dim(p, x, n));
}

void CechElement::set(int p, int x, int n, Matrix m) {
    if (p < 0 || p > space()->truncation || x < 0 || x >= space()->level_size(p))
        throw StructuralError("element: component key out of range");
    if (m.rows() != tgt_dim(p, x, n) || m.cols() != src_dim(p, x, n))
        throw StructuralError("element: component shape mismatch at p=" + std::to_string(p) +
                              " x=" + space()->ids[p][x] + " n=" + std::to_string(n));
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) {
        comps_.erase({p, x, n});
        return;
    }
    comps_[{p, x, n}] = std::move(m);
}

void CechElement::add_to(int p, int x, int n, const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return;
    set(p, x, n, at(p, x, n) + m);
}

std::set<int> CechElement::levels() const {
    std::set<int> out;
    for (auto& [k, m] : comps_) out.insert(k.p);
    return out;
}

CechElement CechElement::piece(int p) const {
    CechElement out(src_, tgt_, deg_);
    for (auto& [k, m] : comps_) {
        if (k.p == p) out.comps_[k] = m;
    }
    return out;
}

CechElement CechElement::operator-() const {
    CechElement out(src_, tgt_, deg_);
    for (auto& [k, m] : comps_) out.comps_[k] = -m;
    return out;
}

CechElement CechElement::scaled(const Rational& s) const {
    CechElement out(src_, tgt_, deg_);
    if (s.is_zero()) return out;
    for (auto& [k, m] : comps_) {
        Matrix sm = m.scaled(s);
        if (!sm.is_zero()) out.comps_[k] = std::move(sm);
    }
    return out;
}

CechElement operator+(const CechElement& a, const CechElement& b) {
    if (!(*a.src_ == *b.src_) || !(*a.tgt_ == *b.tgt_) || a.deg_ != b.deg_)
        throw StructuralError("element: endpoint/degree mismatch in +");
    CechElement out = a;
    for (auto& [k, m] : b.comps_) out.add_to(k.p, k.x, k.n, m);
    return out;
}

CechElement operator-(const CechElement& a, const CechElement& b) { return a + (-b); }

// ---- CechSection ---------------------------------------------------------------

CechSection::CechSection(SheafPtr sheaf, int degree) : sheaf_(std::move(sheaf)), deg_(degree) {}

int CechSection::dim(int p, int x) const {
    return sheaf_->dim(sheaf_->base->front(p, 0, x), deg_ - p);
}

std::vector<Rational> CechSection::at(int p, int x) const {
    auto it = comps_.find({p, x});
    if (it != comps_.end()) return it->second;
    return std::vector<Rational>(dim(p, x), sheaf_->ring.zero());
}

void CechSection::set(int p, int x, std::vector<Rational> v) {
    if (static_cast<int>(v.size()) != dim(p, x))
        throw StructuralError("section: component length mismatch");
    bool zero = true;
    for (auto& e : v) {
        if (!e.is_zero()) zero = false;
    }
    if (zero) {
        comps_.erase({p, x});
        return;
    }
    comps_[{p, x}] = std::move(v);
}

CechSection CechSection::scaled(const Rational& s) const {
    CechSection out(sheaf_, deg_);
    if (s.is_zero()) return out;
    for (auto& [k, v] : comps_) {
        std::vector<Rational> w(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) w[i] = sheaf_->ring.mul(v[i], s);
        out.set(k.first, k.second, std::move(w));
    }
    return out;
}

CechSection operator+(const CechSection& a, const CechSection& b) {
    if (!(*a.sheaf_ == *b.sheaf_) || a.deg_ != b.deg_)
        throw StructuralError("section: sheaf/degree mismatch in +");
    CechSection out = a;
    for (auto& [k, v] : b.comps_) {
        auto cur = out.at(k.first, k.second);
        for (std::size_t i = 0; i < v.size(); ++i) cur[i] = a.sheaf_->ring.add(cur[i], v[i]);
        out.set(k.first, k.second, std::move(cur));
    }
    return out;
}

CechSection operator-(const CechSection& a, const CechSection& b) {
    return a + b.scaled(Rational(-1));
}

// ---- composition and action ----------------------------------------------------

CechElement compose(const CechElement& u, const CechElement& v) {
    if (!(*u.source() == *v.target()))
        throw StructuralError("compose: middle sheaf mismatch");
    require_same_space(u.source(), v.source(), "compose");
    const SimplicialSpace& sp = *u.space();
    const int N = sp.truncation;
    const int dv = v.degree();

    CechElement out(v.source(), u.target(), u.degree() + v.degree());
    for (int pu : u.levels()) {
        const int qu = u.degree() - pu;
        for (int pv : v.levels()) {
            const int t = pu + pv;
            if (t > N) continue;  // quotient semantics: the window is closed under composition
            const bool neg = (qu % 2 != 0) && (pv % 2 != 0);
            for (int x = 0; x < sp.level_size(t); ++x) {
                int xf = sp.front(t, pu, x);
                int xb = sp.back(t, pv, x);
                for (auto it = v.comps().lower_bound({pv, xb, INT32_MIN});
                     it != v.comps().end() && it->first.p == pv && it->first.x == xb; ++it) {
                    int n = it->first.n;
                    Matrix a = u.at(pu, xf, n + dv - pv);
                    if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) continue;
                    Matrix prod = a * it->second;
                    if (neg) prod = -prod;
                    out.add_to(t, x, n, prod);
                }
            }
        }
    }
    return out;
}

CechSection act(const CechElement& u, const CechSection& c) {
    if (!(*u.source() == *c.sheaf()) || !(*u.target() == *c.sheaf()))
        throw StructuralError("act: element endpoints must be the section's sheaf");
    const SimplicialSpace& sp = *u.space();
    const int N = sp.truncation;
    const BaseRing& R = u.ring();
    CechSection out(c.sheaf(), u.degree() + c.degree());
    for (int pu : u.levels()) {
        const int qu = u.degree() - pu;
        std::set<int> clevels;
        for (auto& [kc, vv] : c.comps()) clevels.insert(kc.first);
        for (int pv : clevels) {
            const int t = pu + pv;
            if (t > N) continue;
            const int s = c.degree() - pv;
            const bool neg = (qu % 2 != 0) && (pv % 2 != 0);
            for (int x = 0; x < sp.level_size(t); ++x) {
                int xf = sp.front(t, pu, x);
                int xb = sp.back(t, pv, x);
                auto itc = c.comps().find({pv, xb});
                if (itc == c.comps().end()) continue;
                Matrix a = u.at(pu, xf, s);
                if (a.rows() == 0 || a.cols() == 0 || a.is_zero()) continue;
                auto w = a.apply(itc->second);
                auto cur = out.at(t, x);
                for (std::size_t i = 0; i < w.size(); ++i)
                    cur[i] = neg ? R.sub(cur[i], w[i]) : R.add(cur[i], w[i]);
                out.set(t, x, std::move(cur));
            }
        }
    }
    return out;
}

CechElement delta_hom(const CechElement& u) {
    const SimplicialSpace& sp = *u.space();
    const int N = sp.truncation;
    CechElement out(u.source(), u.target(), u.degree() + 1);
    for (int p : u.levels()) {
        if (p + 1 > N) continue;  // quotiented away
        std::set<int> degs;
        for (auto& [k, m] : u.comps()) {
            if (k.p == p) degs.insert(k.n);
        }
        for (int y = 0; y < sp.level_size(p + 1); ++y) {
            for (int n : degs) {
                Matrix acc(u.ring(), out.tgt_dim(p + 1, y, n), out.src_dim(p + 1, y, n));
                if (acc.rows() == 0 || acc.cols() == 0) continue;
                for (int k = 1; k <= p; ++k) {
                    Matrix f = u.at(p, sp.face(p + 1, k, y), n);
                    acc = (k % 2 != 0) ? acc - f : acc + f;
                }
                out.add_to(p + 1, y, n, acc);
            }
        }
    }
    return out;
}

CechSection delta_section(const CechSection& c) {
    const SimplicialSpace& sp = *c.sheaf()->base;
    const int N = sp.truncation;
    const BaseRing& R = c.sheaf()->ring;
    CechSection out(c.sheaf(), c.degree() + 1);
    std::set<int> lv;
    for (auto& [k, v] : c.comps()) lv.insert(k.first);
    for (int p : lv) {
        if (p + 1 > N) continue;  // quotiented away
        for (int y = 0; y < sp.level_size(p + 1); ++y) {
            auto acc = out.at(p + 1, y);
            if (acc.empty()) continue;
            for (int k = 1; k <= p + 1; ++k) {
                auto f = c.at(p, sp.face(p + 1, k, y));
                for (std::size_t i = 0; i < acc.size(); ++i)
                    acc[i] = (k % 2 != 0) ? R.sub(acc[i], f[i]) : R.add(acc[i], f[i]);
            }
            out.set(p + 1, y, std::move(acc));
        }
    }
    return out;
}

// ---- pullback ------------------------------------------------------------------

GradedSheaf pullback_sheaf(const SimplicialMap& f, const SheafPtr& e) {
    if (!(*f.target == *e->base)) throw StructuralError("pullback: sheaf not over the map target");
    GradedSheaf out;
    out.base = f.source;
    out.ring = e->ring;
    out.at.resize(f.source->level_size(0));
    for (int x = 0; x < f.source->level_size(0); ++x) out.at[x] = e->at[f.at(0, x)];
    return out;
}

SheafPtr pullback_sheaf_ptr(const SimplicialMap& f, const SheafPtr& e) {
    return std::make_shared<GradedSheaf>(pullback_sheaf(f, e));
}

CechElement pullback_element(const SimplicialMap& f, const CechElement& u,
                             const SheafPtr& pulled_src, const SheafPtr& pulled_tgt) {
    if (!(*f.target == *u.space())) throw StructuralError("pullback: element not over the map target");
    CechElement out(pulled_src, pulled_tgt, u.degree());
    const SimplicialSpace& U = *f.source;
    for (int p = 0; p <= U.truncation; ++p) {
        for (int x = 0; x < U.level_size(p); ++x) {
            int fx = f.at(p, x);
            for (auto it = u.comps().lower_bound({p, fx, INT32_MIN});
                 it != u.comps().end() && it->first.p == p && it->first.x == fx; ++it) {
                out.set(p, x, it->first.n, it->second);
            }
        }
    }
    return out;
}

CechElement pullback_element(const SimplicialMap& f, const CechElement& u) {
    return pullback_element(f, u, pullback_sheaf_ptr(f, u.source()),
                            pullback_sheaf_ptr(f, u.target()));
}

// ---- inversion and gauge ---------------------------------------------------------

CechElement invert_graded(const CechElement& u) {
    if (u.degree() != 0) throw StructuralError("invert: element must have total degree 0");
    if (!(*u.source() == *u.target())) throw StructuralError("invert: element must be an endomorphism");
    const SheafPtr& e = u.source();
    const SimplicialSpace& sp = *u.space();

    CechElement level0_inv(e, e, 0);
    for (int x = 0; x < sp.level_size(0); ++x) {
        for (auto& [n, r] : e->at[x].dims) {
            if (r == 0) continue;
            auto inv = try_inverse(u.at(0, x, n));
            if (!inv)
                throw StructuralError("invert: level-0 block is singular at point " + sp.ids[0][x] +
                                      " degree " + std::to_string(n));
            level0_inv.set(0, x, n, std::move(*inv));
        }
    }
    CechElement higher = u;
    for (int x = 0; x < sp.level_size(0); ++x) {
        for (auto& [n, r] : e->at[x].dims) higher.set(0, x, n, Matrix(u.ring(), r, r));
    }
    // (1 + m)^{-1} = sum (-m)^k, m nilpotent in the window
    CechElement m = compose(level0_inv, higher);
    CechElement acc = CechElement::identity(e);
    CechElement term = CechElement::identity(e);
    for (int k = 1; k <= sp.truncation && !term.is_zero(); ++k) {
        term = -compose(m, term);
        acc = acc + term;
    }
    CechElement result = compose(acc, level0_inv);
    CechElement id = CechElement::identity(e);
    if (!(compose(u, result) == id) || !(compose(result, u) == id))
        throw InvariantViolation("invert: verification u u^{-1} = u^{-1} u = 1 failed");
    return result;
}

CechElement curvature(const CechElement& a) {
    return delta_hom(a) + compose(a, a);
}

CechElement gauge_transform(const CechElement& u, const CechElement& a) {
    if (a.degree() != 1) throw StructuralError("gauge: connection element must have degree 1");
    if (!curvature(a).is_zero()) throw StructuralError("gauge: input does not satisfy the flatness equation");
    CechElement uinv = invert_graded(u);
    CechElement ap = compose(compose(u, a), uinv) - compose(delta_hom(u), uinv);
    if (!curvature(ap).is_zero())
        throw ConventionError("gauge: output flatness residual is nonzero");
    return ap;
}

}  // namespace twc
