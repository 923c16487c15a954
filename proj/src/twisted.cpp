#include "twc/twisted.hpp"

#include "twc/errors.hpp"

namespace twc {

TwistedPtr make_twisted(SheafPtr sheaf, CechElement a) {
    if (!(*a.source() == *sheaf) || !(*a.target() == *sheaf))
        throw StructuralError("twisted: connection element must be an endomorphism of the sheaf");
    if (a.degree() != 1) throw StructuralError("twisted: connection element must have degree 1");
    auto t = std::make_shared<TwistedComplex>();
    t->sheaf = std::move(sheaf);
    t->a = std::move(a);
    return t;
}

TwistedMorphism identity_morphism(const TwistedPtr& t) {
    return TwistedMorphism{t, t, CechElement::identity(t->sheaf)};
}

TwistedMorphism zero_morphism(const TwistedPtr& s, const TwistedPtr& t, int degree) {
    return TwistedMorphism{s, t, CechElement::zero(s->sheaf, t->sheaf, degree)};
}

namespace {

void require_endpoints(const TwistedMorphism& a, const TwistedMorphism& b, const char* what) {
    if (!(*a.source == *b.source) || !(*a.target == *b.target))
        throw StructuralError(std::string(what) + ": endpoint mismatch");
}

}  // namespace

TwistedMorphism morphism_add(const TwistedMorphism& a, const TwistedMorphism& b) {
    require_endpoints(a, b, "morphism_add");
    return TwistedMorphism{a.source, a.target, a.el + b.el};
}

TwistedMorphism morphism_sub(const TwistedMorphism& a, const TwistedMorphism& b) {
    require_endpoints(a, b, "morphism_sub");
    return TwistedMorphism{a.source, a.target, a.el - b.el};
}

TwistedMorphism morphism_scale(const TwistedMorphism& a, const Rational& s) {
    return TwistedMorphism{a.source, a.target, a.el.scaled(s)};
}

TwistedMorphism morphism_compose(const TwistedMorphism& phi, const TwistedMorphism& psi) {
    if (!(*phi.source == *psi.target)) throw StructuralError("morphism_compose: middle object mismatch");
    return TwistedMorphism{psi.source, phi.target, compose(phi.el, psi.el)};
}

// ---- flatness -------------------------------------------------------------------

CechElement mc_residual(const TwistedComplex& t) {
    CechElement compact = curvature(t.a);

    // direct route: per-(k, j) expansion of the flatness equation
    const CechElement& a = t.a;
    const SimplicialSpace& sp = *a.space();
    const SheafPtr& e = t.sheaf;
    CechElement direct(e, e, 2);
    for (int k = 0; k <= sp.truncation; ++k) {
        for (int x = 0; x < sp.level_size(k); ++x) {
            int xb_all = sp.back(k, 0, x);
            for (auto& [n, r] : e->at[xb_all].dims) {
                if (r == 0) continue;
                int rows = direct.tgt_dim(k, x, n);
                if (rows == 0) continue;
                Matrix acc(a.ring(), rows, r);
                for (int j = 1; j <= k - 1; ++j) {
                    Matrix f = a.at(k - 1, sp.face(k, j, x), n);
                    acc = (j % 2 != 0) ? acc - f : acc + f;
                }
                for (int j = 0; j <= k; ++j) {
                    Matrix left = a.at(j, sp.front(k, j, x), n + 1 - (k - j));
                    Matrix right = a.at(k - j, sp.back(k, k - j, x), n);
                    if (left.rows() == 0 || left.cols() == 0 || right.rows() == 0 || right.cols() == 0)
                        continue;
                    Matrix prod = left * right;
                    bool neg = ((1 - j) % 2 != 0) && ((k - j) % 2 != 0);
                    acc = neg ? acc - prod : acc + prod;
                }
                direct.add_to(k, x, n, acc);
            }
        }
    }
    if (!(compact == direct))
        throw InvariantViolation("mc_residual: algebraic and direct expansions disagree");
    return compact;
}

// ---- morphism differential --------------------------------------------------------

namespace {

CechElement morphism_diff_el(const CechElement& b, const CechElement& th, const CechElement& a) {
    const int m = th.degree();
    CechElement out = delta_hom(th) + compose(b, th);
    CechElement right = compose(th, a);
    return (m % 2 != 0) ? out + right : out - right;
}

}  // namespace

TwistedMorphism morphism_diff(const TwistedMorphism& theta) {
    if (!mc_residual(*theta.source).is_zero() || !mc_residual(*theta.target).is_zero())
        throw InvariantViolation("morphism_diff: an endpoint violates the flatness equation");
    const CechElement& a = theta.source->a;
    const CechElement& b = theta.target->a;
    const CechElement& th = theta.el;
    const int m = th.degree();
    CechElement compact = morphism_diff_el(b, th, a);

    // direct route: componentwise expansion
    const SimplicialSpace& sp = *th.space();
    CechElement direct(th.source(), th.target(), m + 1);
    for (int k = 0; k <= sp.truncation; ++k) {
        for (int x = 0; x < sp.level_size(k); ++x) {
            int src_pt = sp.back(k, 0, x);
            for (auto& [n, r] : th.source()->at[src_pt].dims) {
                if (r == 0) continue;
                int rows = direct.tgt_dim(k, x, n);
                if (rows == 0) continue;
                Matrix acc(th.ring(), rows, r);
                for (int j = 1; j <= k - 1; ++j) {
                    Matrix f = th.at(k - 1, sp.face(k, j, x), n);
                    acc = (j % 2 != 0) ? acc - f : acc + f;
                }
                for (int l = 0; l <= k; ++l) {
                    // b^{l,1-l} rho* . theta^{k-l, m-k+l} tau*
                    Matrix left = b.at(l, sp.front(k, l, x), n + m - (k - l));
                    Matrix right = th.at(k - l, sp.back(k, k - l, x), n);
                    if (left.rows() && left.cols() && right.rows() && right.cols()) {
                        Matrix prod = left * right;
                        bool neg = ((1 - l) % 2 != 0) && ((k - l) % 2 != 0);
                        acc = neg ? acc - prod : acc + prod;
                    }
                    // -(-1)^m theta^{l,m-l} rho* . a^{k-l,1-k+l} tau*
                    Matrix tleft = th.at(l, sp.front(k, l, x), n + 1 - (k - l));
                    Matrix aright = a.at(k - l, sp.back(k, k - l, x), n);
                    if (tleft.rows() && tleft.cols() && aright.rows() && aright.cols()) {
                        Matrix prod = tleft * aright;
                        bool koszul = ((m - l) % 2 != 0) && ((k - l) % 2 != 0);
                        bool neg = (m % 2 == 0) != koszul;  // -(-1)^m (-1)^{(m-l)(k-l)}
                        acc = neg ? acc - prod : acc + prod;
                    }
                }
                direct.add_to(k, x, n, acc);
            }
        }
    }
    if (!(compact == direct))
        throw InvariantViolation("morphism_diff: algebraic and direct expansions disagree");
    return TwistedMorphism{theta.source, theta.target, compact};
}

// ---- nondegeneracy ----------------------------------------------------------------

ChainComplex complex_at_point(const TwistedComplex& t, int x) {
    ChainComplex c;
    c.ring = t.sheaf->ring;
    c.mod = t.sheaf->at[x];
    for (auto& [n, r] : c.mod.dims) {
        if (r == 0 || c.mod.dim(n + 1) == 0) continue;
        c.set_d(n, t.a.at(0, x, n));
    }
    return c;
}

namespace {

ChainMap edge_chain_map(const TwistedComplex& t, int y) {
    const SimplicialSpace& sp = *t.sheaf->base;
    int xs = sp.back(1, 0, y);
    int xt = sp.front(1, 0, y);
    ChainMap f{complex_at_point(t, xs), complex_at_point(t, xt), {}};
    for (auto& [n, r] : t.sheaf->at[xs].dims) {
        if (r == 0 || t.sheaf->at[xt].dim(n) == 0) continue;
        Matrix m = t.a.at(1, y, n);
        if (!m.is_zero()) f.f[n] = m;
    }
    return f;
}

}  // namespace

ValidationReport check_nondegenerate(const TwistedComplex& t) {
    if (!mc_residual(t).is_zero())
        throw InvariantViolation("check_nondegenerate: flatness equation violated");
    ValidationReport rep;
    const SimplicialSpace& sp = *t.sheaf->base;
    if (sp.truncation < 1) {
        rep.count("nondegenerate-degenerate-edges");
        return rep;
    }
    std::vector<bool> degenerate(sp.level_size(1), false);
    for (int x = 0; x < sp.level_size(0); ++x) degenerate[sp.degeneracy(0, 0, x)] = true;
    auto& info = rep.family("nondegenerate-other-edges (informative)");
    info.informative = true;
    for (int y = 0; y < sp.level_size(1); ++y) {
        ChainMap f = edge_chain_map(t, y);
        bool qiso = is_quasi_iso(f);
        if (degenerate[y]) {
            rep.count("nondegenerate-degenerate-edges");
            if (!qiso)
                rep.violation("nondegenerate-degenerate-edges",
                              "a^{1,0} not a quasi-isomorphism at edge " + sp.ids[1][y]);
        } else {
            info.instances++;
            if (!qiso) info.violations.push_back("a^{1,0} not a quasi-isomorphism at edge " + sp.ids[1][y]);
        }
    }
    return rep;
}

ValidationReport validate_twisted(const TwistedComplex& t) {
    ValidationReport rep;
    t.sheaf->check();
    CechElement res = mc_residual(t);
    auto& mc = rep.family("flatness");
    mc.instances++;
    if (!res.is_zero()) {
        mc.pass = false;
        for (auto& [k, m] : res.comps()) {
            mc.violations.push_back("nonzero at (p=" + std::to_string(k.p) + ", x=" +
                                    t.sheaf->base->ids[k.p][k.x] + ", n=" + std::to_string(k.n) + ")");
        }
        return rep;
    }
    // window policy: every potentially nonzero piece fits
    auto& win = rep.family("window-size");
    win.instances++;
    if (t.sheaf->some_nonempty()) {
        int amp = t.sheaf->max_deg() - t.sheaf->min_deg();
        if (t.sheaf->base->truncation < amp + 2) {
            win.pass = false;
            win.violations.push_back("truncation " + std::to_string(t.sheaf->base->truncation) +
                                     " < amplitude + 2 = " + std::to_string(amp + 2));
        }
    }
    rep.merge(check_nondegenerate(t));
    return rep;
}

// ---- pullback ---------------------------------------------------------------------

TwistedPtr pullback_twisted(const SimplicialMap& f, const TwistedComplex& t) {
    SheafPtr pulled = pullback_sheaf_ptr(f, t.sheaf);
    return make_twisted(pulled, pullback_element(f, t.a, pulled, pulled));
}

TwistedMorphism pullback_morphism(const SimplicialMap& f, const TwistedMorphism& m,
                                  const TwistedPtr& pulled_src, const TwistedPtr& pulled_tgt) {
    return TwistedMorphism{pulled_src, pulled_tgt,
                           pullback_element(f, m.el, pulled_src->sheaf, pulled_tgt->sheaf)};
}

// ---- weak equivalence ---------------------------------------------------------------

bool is_weak_equivalence(const TwistedMorphism& phi) {
    if (phi.degree() != 0) return false;
    if (!morphism_diff(phi).is_zero()) return false;
    const SimplicialSpace& sp = *phi.el.space();
    for (int x = 0; x < sp.level_size(0); ++x) {
        ChainComplex src = complex_at_point(*phi.source, x);
        ChainComplex tgt = complex_at_point(*phi.target, x);
        ChainMap f{src, tgt, {}};
        for (auto& [n, r] : src.mod.dims) {
            if (r == 0 || tgt.mod.dim(n) == 0) continue;
            Matrix m = phi.el.at(0, x, n);
            if (!m.is_zero()) f.f[n] = m;
        }
        if (!is_quasi_iso(f)) return false;
    }
    return true;
}

// ---- morphism space basis ------------------------------------------------------------

MorphismBasis MorphismBasis::build(const TwistedPtr& s, const TwistedPtr& t, int degree) {
    MorphismBasis b;
    b.source = s;
    b.target = t;
    b.degree = degree;
    const SimplicialSpace& sp = *s->sheaf->base;
    for (int p = 0; p <= sp.truncation; ++p) {
        for (int x = 0; x < sp.level_size(p); ++x) {
            const GradedModule& src = s->sheaf->at[sp.back(p, 0, x)];
            const GradedModule& tgt = t->sheaf->at[sp.front(p, 0, x)];
            for (auto& [n, r] : src.dims) {
                if (r == 0) continue;
                int rows = tgt.dim(n + degree - p);
                if (rows == 0) continue;
                for (int i = 0; i < rows; ++i) {
                    for (int j = 0; j < r; ++j) b.slots.push_back({p, x, n, i, j});
                }
            }
        }
    }
    return b;
}

std::vector<Rational> MorphismBasis::vectorize(const TwistedMorphism& m) const {
    std::vector<Rational> v(slots.size(), source->sheaf->ring.zero());
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const auto& s = slots[k];
        auto it = m.el.comps().find({s.p, s.x, s.n});
        if (it != m.el.comps().end()) v[k] = it->second.at(s.row, s.col);
    }
    return v;
}

TwistedMorphism MorphismBasis::devectorize(const std::vector<Rational>& v) const {
    TwistedMorphism m = zero_morphism(source, target, degree);
    std::map<std::pair<int, std::pair<int, int>>, Matrix> blocks;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (v[k].is_zero()) continue;
        const auto& s = slots[k];
        auto key = std::make_pair(s.p, std::make_pair(s.x, s.n));
        auto it = blocks.find(key);
        if (it == blocks.end()) {
            Matrix blank(source->sheaf->ring, m.el.tgt_dim(s.p, s.x, s.n), m.el.src_dim(s.p, s.x, s.n));
            it = blocks.emplace(key, std::move(blank)).first;
        }
        it->second.set(s.row, s.col, v[k]);
    }
    for (auto& [key, mat] : blocks) m.el.set(key.first, key.second.first, key.second.second, std::move(mat));
    return m;
}

// ---- homotopy-category inversion -------------------------------------------------------

std::optional<HoInverse> ho_invert(const TwistedMorphism& phi) {
    if (phi.degree() != 0) throw StructuralError("ho_invert: morphism must have degree 0");
    if (!morphism_diff(phi).is_zero()) throw StructuralError("ho_invert: morphism must be closed");
    const TwistedPtr& S = phi.source;  // phi: S -> T
    const TwistedPtr& T = phi.target;
    const BaseRing& R = S->sheaf->ring;

    // the window must hold every potentially nonzero component of the unknowns
    // and of the witness equations, else the truncated system is a different
    // problem; the bound for a degree-m space A -> B is m + max(A) - min(B)
    if (S->sheaf->some_nonempty() && T->sheaf->some_nonempty()) {
        const int N = S->sheaf->base->truncation;
        int hiS = S->sheaf->max_deg(), loS = S->sheaf->min_deg();
        int hiT = T->sheaf->max_deg(), loT = T->sheaf->min_deg();
        int need = std::max({1 + hiT - loS, hiS - loS, hiT - loT});
        if (need > N)
            throw TruncationError("ho_invert: window " + std::to_string(N) +
                                  " too small to close the system (needs " + std::to_string(need) +
                                  ")");
    }

    MorphismBasis psiB = MorphismBasis::build(T, S, 0);
    MorphismBasis etaB = MorphismBasis::build(S, S, -1);
    MorphismBasis omgB = MorphismBasis::build(T, T, -1);
    MorphismBasis dpsiB = MorphismBasis::build(T, S, 1);
    MorphismBasis eeB = MorphismBasis::build(S, S, 0);
    MorphismBasis ffB = MorphismBasis::build(T, T, 0);

    const int cols = psiB.dim() + etaB.dim() + omgB.dim();
    const int rows = dpsiB.dim() + eeB.dim() + ffB.dim();
    Matrix A(R, rows, cols);
    std::vector<Rational> rhs(rows, R.zero());

    const CechElement& a = S->a;
    const CechElement& b = T->a;
    auto fill_col = [&](int col, int row_off, const MorphismBasis& rowB, const TwistedMorphism& img,
                        bool negate) {
        auto v = rowB.vectorize(img);
        for (int i = 0; i < rowB.dim(); ++i) {
            if (v[i].is_zero()) continue;
            A.set(row_off + i, col, negate ? R.neg(v[i]) : v[i]);
        }
    };
    {
        // psi columns: d(psi) rows, psi phi rows, phi psi rows
        for (int k = 0; k < psiB.dim(); ++k) {
            std::vector<Rational> unit(psiB.dim(), R.zero());
            unit[static_cast<std::size_t>(k)] = R.one();
            TwistedMorphism e = psiB.devectorize(unit);
            TwistedMorphism de{e.source, e.target, morphism_diff_el(S->a, e.el, T->a)};
            fill_col(k, 0, dpsiB, de, false);
            fill_col(k, dpsiB.dim(), eeB, morphism_compose(e, phi), false);
            fill_col(k, dpsiB.dim() + eeB.dim(), ffB, morphism_compose(phi, e), false);
        }
        // eta columns: -d(eta) in the S->S block
        for (int k = 0; k < etaB.dim(); ++k) {
            std::vector<Rational> unit(etaB.dim(), R.zero());
            unit[static_cast<std::size_t>(k)] = R.one();
            TwistedMorphism e = etaB.devectorize(unit);
            TwistedMorphism de{e.source, e.target, morphism_diff_el(a, e.el, a)};
            fill_col(psiB.dim() + k, dpsiB.dim(), eeB, de, true);
        }
        // omega columns: -d(omega) in the T->T block
        for (int k = 0; k < omgB.dim(); ++k) {
            std::vector<Rational> unit(omgB.dim(), R.zero());
            unit[static_cast<std::size_t>(k)] = R.one();
            TwistedMorphism e = omgB.devectorize(unit);
            TwistedMorphism de{e.source, e.target, morphism_diff_el(b, e.el, b)};
            fill_col(psiB.dim() + etaB.dim() + k, dpsiB.dim() + eeB.dim(), ffB, de, true);
        }
    }
    auto idS = eeB.vectorize(identity_morphism(S));
    auto idT = ffB.vectorize(identity_morphism(T));
    for (int i = 0; i < eeB.dim(); ++i) rhs[dpsiB.dim() + i] = idS[i];
    for (int i = 0; i < ffB.dim(); ++i) rhs[dpsiB.dim() + eeB.dim() + i] = idT[i];

    auto sol = solve_affine(A, rhs);
    if (!sol) return std::nullopt;
    std::vector<Rational> vp(sol->begin(), sol->begin() + psiB.dim());
    std::vector<Rational> ve(sol->begin() + psiB.dim(), sol->begin() + psiB.dim() + etaB.dim());
    std::vector<Rational> vo(sol->begin() + psiB.dim() + etaB.dim(), sol->end());
    HoInverse w{psiB.devectorize(vp), etaB.devectorize(ve), omgB.devectorize(vo)};
    // re-verify the witness equations exactly
    if (!morphism_diff(w.psi).is_zero())
        throw InvariantViolation("ho_invert: solver returned a non-closed inverse");
    TwistedMorphism lhs1 = morphism_sub(morphism_compose(w.psi, phi), identity_morphism(S));
    if (!(lhs1.el == morphism_diff(w.eta).el))
        throw InvariantViolation("ho_invert: eta witness equation fails");
    TwistedMorphism lhs2 = morphism_sub(morphism_compose(phi, w.psi), identity_morphism(T));
    if (!(lhs2.el == morphism_diff(w.omega).el))
        throw InvariantViolation("ho_invert: omega witness equation fails");
    return w;
}

}  // namespace twc
