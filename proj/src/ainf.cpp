#include "twc/ainf.hpp"

#include "twc/errors.hpp"

namespace twc {

namespace {

bool odd(long long v) { return (v % 2 + 2) % 2 == 1; }

TwistedMorphism apply_sign(TwistedMorphism m, bool neg) {
    return neg ? morphism_scale(std::move(m), Rational(-1)) : m;
}

}  // namespace

TwistedMorphism AinfPrenat::ev0(const TwistedComplex& x) const {
    if (level0) return level0(x);
    auto fx = pullback_twisted(f, x);
    auto gx = pullback_twisted(g, x);
    return zero_morphism(fx, gx, degree);
}

TwistedMorphism AinfPrenat::ev(int l, const std::vector<TwistedMorphism>& args) const {
    if (l < 1 || static_cast<int>(args.size()) != l)
        throw StructuralError("prenat: level/argument count mismatch");
    if (l - 1 < static_cast<int>(higher.size()) && higher[l - 1]) return higher[l - 1](args);
    int deg = degree - l;
    for (const auto& u : args) deg += u.degree();
    auto fx = pullback_twisted(f, *args.back().source);
    auto gx = pullback_twisted(g, *args.front().target);
    return zero_morphism(fx, gx, deg);
}

int ProbeSet::object_index(const TwistedComplex& x) const {
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (*objects[i] == x) return static_cast<int>(i);
    }
    return -1;
}

std::vector<std::vector<int>> composable_tuples(const ProbeSet& probe, int len) {
    std::vector<std::vector<int>> out;
    if (len <= 0) return out;
    std::vector<int> cur;
    // tuple (u_l, ..., u_1): build right to left; cur holds (u_l ... u_j)
    std::function<void(int)> rec = [&](int remaining) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = 0; i < probe.morphisms.size(); ++i) {
            if (!cur.empty()) {
                // next to the right: target must be the source of the last chosen
                const auto& prev = probe.morphisms[cur.back()];
                if (!(*probe.morphisms[i].target == *prev.source)) continue;
            }
            cur.push_back(static_cast<int>(i));
            rec(remaining - 1);
            cur.pop_back();
        }
    };
    rec(len);
    return out;
}

AinfPrenat identity_prenat(const SimplicialMap& f) {
    AinfPrenat p;
    p.f = f;
    p.g = f;
    p.degree = 0;
    p.level0 = [f](const TwistedComplex& x) { return identity_morphism(pullback_twisted(f, x)); };
    return p;
}

AinfPrenat d_infinity(const AinfPrenat& phi) {
    auto base = std::make_shared<const AinfPrenat>(phi);
    AinfPrenat out;
    out.f = phi.f;
    out.g = phi.g;
    out.degree = phi.degree + 1;
    out.level0 = [base](const TwistedComplex& x) { return morphism_diff(base->ev0(x)); };
    const int n = phi.degree;
    const SimplicialMap f = phi.f;
    const SimplicialMap g = phi.g;
    auto mk = [base, n, f, g](int l) {
        return [base, n, f, g, l](const std::vector<TwistedMorphism>& args) {
            // args = (u_l, ..., u_1)
            std::vector<long long> degs(args.size());
            for (std::size_t i = 0; i < args.size(); ++i) degs[i] = args[i].degree();
            TwistedMorphism acc = morphism_diff(base->ev(l, args));
            {
                // G(u_l) Phi^{l-1}(u_{l-1} ... u_1)
                TwistedMorphism inner =
                    l == 1 ? base->ev0(*args[0].source)
                           : base->ev(l - 1, std::vector<TwistedMorphism>(args.begin() + 1, args.end()));
                auto gs = pullback_twisted(g, *args[0].source);
                auto gt = pullback_twisted(g, *args[0].target);
                TwistedMorphism t = morphism_compose(pullback_morphism(g, args[0], gs, gt), inner);
                acc = morphism_add(acc, apply_sign(t, odd((n + 1) * (degs[0] + 1))));
            }
            {
                // Phi^{l-1}(u_l ... u_2) F(u_1)
                TwistedMorphism inner =
                    l == 1 ? base->ev0(*args[0].target)
                           : base->ev(l - 1, std::vector<TwistedMorphism>(args.begin(), args.end() - 1));
                auto fs = pullback_twisted(f, *args.back().source);
                auto ft = pullback_twisted(f, *args.back().target);
                TwistedMorphism t = morphism_compose(inner, pullback_morphism(f, args.back(), fs, ft));
                long long e = n + 1;
                for (long long d : degs) e += d + 1;
                acc = morphism_add(acc, apply_sign(t, odd(e)));
            }
            for (int i = 1; i <= l; ++i) {
                // argument u_i sits at position l - i
                long long s = 0;
                for (int j = 0; j < l - i; ++j) s += degs[j];
                std::vector<TwistedMorphism> mod = args;
                mod[l - i] = morphism_diff(args[l - i]);
                acc = morphism_add(acc, apply_sign(base->ev(l, mod), odd(s + l - i + 1 + n)));
            }
            for (int i = 1; i <= l - 1; ++i) {
                long long s = 0;
                for (int j = 0; j < l - i; ++j) s += degs[j];
                std::vector<TwistedMorphism> mod;
                mod.insert(mod.end(), args.begin(), args.begin() + (l - i - 1));
                mod.push_back(morphism_compose(args[l - i - 1], args[l - i]));
                mod.insert(mod.end(), args.begin() + (l - i + 1), args.end());
                acc = morphism_add(acc, apply_sign(base->ev(l - 1, mod), odd(s + l - i + 1 + n)));
            }
            return acc;
        };
    };
    out.higher.resize(4);
    for (int l = 1; l <= 4; ++l) out.higher[l - 1] = mk(l);
    return out;
}

AinfPrenat compose_ainf(const AinfPrenat& psi, const AinfPrenat& phi) {
    if (!(psi.f == phi.g))
        throw StructuralError("compose_ainf: middle functor mismatch");
    if (psi.degree != 0 || phi.degree != 0)
        throw StructuralError("compose_ainf: both transformations must have degree 0");
    auto P = std::make_shared<const AinfPrenat>(psi);
    auto Q = std::make_shared<const AinfPrenat>(phi);
    AinfPrenat out;
    out.f = phi.f;
    out.g = psi.g;
    out.degree = 0;
    out.level0 = [P, Q](const TwistedComplex& x) {
        return morphism_compose(P->ev0(x), Q->ev0(x));
    };
    auto mk = [P, Q](int l) {
        return [P, Q, l](const std::vector<TwistedMorphism>& args) {
            TwistedMorphism acc =
                morphism_compose(P->ev(l, args), Q->ev0(*args.back().source));
            acc = morphism_add(acc, morphism_compose(P->ev0(*args.front().target), Q->ev(l, args)));
            for (int k = 1; k <= l - 1; ++k) {
                // Psi^{l-k}(u_l ... u_{k+1}) Phi^k(u_k ... u_1)
                std::vector<TwistedMorphism> left(args.begin(), args.begin() + (l - k));
                std::vector<TwistedMorphism> right(args.begin() + (l - k), args.end());
                acc = morphism_add(acc, morphism_compose(P->ev(l - k, left), Q->ev(k, right)));
            }
            return acc;
        };
    };
    out.higher.resize(4);
    for (int l = 1; l <= 4; ++l) out.higher[l - 1] = mk(l);
    return out;
}

ValidationReport prenat_vanishes(const AinfPrenat& phi, const ProbeSet& probe, int max_level,
                                 const std::string& name) {
    ValidationReport rep;
    for (std::size_t i = 0; i < probe.objects.size(); ++i) {
        std::string fam = name + " level 0";
        rep.count(fam);
        if (!phi.ev0(*probe.objects[i]).is_zero())
            rep.violation(fam, "object #" + std::to_string(i));
    }
    for (int l = 1; l <= max_level; ++l) {
        std::string fam = name + " level " + std::to_string(l);
        for (const auto& tup : composable_tuples(probe, l)) {
            std::vector<TwistedMorphism> args;
            for (int i : tup) args.push_back(probe.morphisms[i]);
            rep.count(fam);
            if (!phi.ev(l, args).is_zero()) {
                std::string where = "tuple (";
                for (std::size_t i = 0; i < tup.size(); ++i)
                    where += (i ? "," : "") + std::to_string(tup[i]);
                rep.violation(fam, where + ")");
            }
        }
        rep.family(fam);
    }
    return rep;
}

// ---- the homotopy-induced transformation ------------------------------------------

TwistedMorphism build_phi0(const SimplicialHomotopy& h, const TwistedComplex& t) {
    const SimplicialMap& f = h.f;
    const SimplicialMap& g = h.g;
    if (!(*t.a.space() == *f.target)) throw StructuralError("phi0: object not over the homotopy target");
    auto ft = pullback_twisted(f, t);
    auto gt = pullback_twisted(g, t);
    const SimplicialSpace& U = *f.source;
    CechElement el(ft->sheaf, gt->sheaf, 0);
    for (int k = 0; k < h.levels(); ++k) {
        for (int x = 0; x < U.level_size(k); ++x) {
            int lo = 0, hi = -1;
            if (ft->sheaf->some_nonempty()) {
                lo = t.sheaf->min_deg();
                hi = t.sheaf->max_deg();
            }
            for (int n = lo; n <= hi; ++n) {
                int rows = el.tgt_dim(k, x, n), cols = el.src_dim(k, x, n);
                if (rows == 0 || cols == 0) continue;
                Matrix acc(el.ring(), rows, cols);
                for (int i = 0; i <= k; ++i) {
                    Matrix m = t.a.at(k + 1, h.at(k, i, x), n);
                    acc = (i % 2 != 0) ? acc - m : acc + m;
                }
                el.set(k, x, n, std::move(acc));
            }
        }
    }
    return TwistedMorphism{ft, gt, std::move(el)};
}

TwistedMorphism build_phi1(const SimplicialHomotopy& h, const TwistedMorphism& phi) {
    const SimplicialMap& f = h.f;
    const SimplicialMap& g = h.g;
    if (!(*phi.el.space() == *f.target)) throw StructuralError("phi1: morphism not over the homotopy target");
    const int m = phi.degree();
    auto fs = pullback_twisted(f, *phi.source);
    auto gt = pullback_twisted(g, *phi.target);
    const SimplicialSpace& U = *f.source;
    CechElement el(fs->sheaf, gt->sheaf, m - 1);
    const bool flip = odd(m - 1);
    for (int k = 0; k < h.levels(); ++k) {
        for (int x = 0; x < U.level_size(k); ++x) {
            if (!phi.source->sheaf->some_nonempty()) continue;
            int lo = phi.source->sheaf->min_deg();
            int hi = phi.source->sheaf->max_deg();
            for (int n = lo; n <= hi; ++n) {
                int rows = el.tgt_dim(k, x, n), cols = el.src_dim(k, x, n);
                if (rows == 0 || cols == 0) continue;
                Matrix acc(el.ring(), rows, cols);
                for (int i = 0; i <= k; ++i) {
                    Matrix mt = phi.el.at(k + 1, h.at(k, i, x), n);
                    acc = (odd(i) != flip) ? acc - mt : acc + mt;
                }
                el.set(k, x, n, std::move(acc));
            }
        }
    }
    return TwistedMorphism{fs, gt, std::move(el)};
}

AinfPrenat build_phi(const SimplicialHomotopy& h) {
    AinfPrenat p;
    p.f = h.f;
    p.g = h.g;
    p.degree = 0;
    auto hh = std::make_shared<const SimplicialHomotopy>(h);
    p.level0 = [hh](const TwistedComplex& x) { return build_phi0(*hh, x); };
    p.higher.resize(1);
    p.higher[0] = [hh](const std::vector<TwistedMorphism>& args) {
        return build_phi1(*hh, args[0]);
    };
    return p;
}

TwistedMorphism naturality_defect(const SimplicialHomotopy& h, const TwistedMorphism& u) {
    auto fs = pullback_twisted(h.f, *u.source);
    auto ft = pullback_twisted(h.f, *u.target);
    auto gs = pullback_twisted(h.g, *u.source);
    auto gt = pullback_twisted(h.g, *u.target);
    TwistedMorphism left = morphism_compose(pullback_morphism(h.g, u, gs, gt), build_phi0(h, *u.source));
    TwistedMorphism right = morphism_compose(build_phi0(h, *u.target), pullback_morphism(h.f, u, fs, ft));
    return morphism_sub(left, apply_sign(right, odd(u.degree())));
}

// ---- re-indexing identities behind the construction ---------------------------------

namespace {

// sum_{i=1..k-1} sum_{j=0..k-1} (-1)^{i+j} w(h_j d_i x) =
// sum_{i=1..k}   sum_{j=0..k}   (-1)^{i+j-1} w(d_i h_j x)  for w the level-k piece
void check_reindex_face_h(ValidationReport& rep, const SimplicialHomotopy& h,
                          const TwistedComplex& t, const std::string& fam) {
    const SimplicialSpace& U = *h.f.source;
    const SimplicialSpace& V = *h.f.target;
    const CechElement& a = t.a;
    auto fT = pullback_twisted(h.f, t);
    auto gT = pullback_twisted(h.g, t);
    if (!t.sheaf->some_nonempty()) return;
    int lo = t.sheaf->min_deg(), hi = t.sheaf->max_deg();
    for (int k = 1; k < static_cast<int>(h.h.size()) && k <= V.truncation - 1; ++k) {
        for (int x = 0; x < U.level_size(k); ++x) {
            for (int n = lo; n <= hi; ++n) {
                int rows = gT->sheaf->dim(U.front(k, 0, x), n + 1 - k);
                int cols = fT->sheaf->dim(U.back(k, 0, x), n);
                if (rows == 0 || cols == 0) continue;
                Matrix lhs(a.ring(), rows, cols), rhs(a.ring(), rows, cols);
                for (int i = 1; i <= k - 1; ++i) {
                    int dx = U.face(k, i, x);
                    for (int j = 0; j <= k - 1; ++j) {
                        Matrix m = a.at(k, h.at(k - 1, j, dx), n);
                        lhs = odd(i + j) ? lhs - m : lhs + m;
                    }
                }
                for (int i = 1; i <= k; ++i) {
                    for (int j = 0; j <= k; ++j) {
                        Matrix m = a.at(k, V.face(k + 1, i, h.at(k, j, x)), n);
                        rhs = odd(i + j - 1) ? rhs - m : rhs + m;
                    }
                }
                rep.count(fam);
                if (!(lhs == rhs))
                    rep.violation(fam, "k=" + std::to_string(k) + " x=" + U.ids[k][x] +
                                           " n=" + std::to_string(n));
            }
        }
    }
}

// front-side exchange: the double sum over (g^* phi)(rho) (h^* psi)(tau) equals
// h^* of the single product sum, componentwise
void check_reindex_front_g(ValidationReport& rep, const SimplicialHomotopy& h,
                           const TwistedMorphism& phi, const TwistedMorphism& psi,
                           const std::string& fam) {
    const SimplicialSpace& U = *h.f.source;
    const SimplicialSpace& V = *h.f.target;
    const int m = phi.degree(), nd = psi.degree();
    const CechElement& F = phi.el;
    const CechElement& P = psi.el;
    const BaseRing& R = F.ring();
    if (!psi.source->sheaf->some_nonempty()) return;
    int lo = psi.source->sheaf->min_deg(), hi = psi.source->sheaf->max_deg();
    for (int k = 0; k <= std::min(static_cast<int>(h.h.size()) - 1, V.truncation - 1); ++k) {
        for (int x = 0; x < U.level_size(k); ++x) {
            for (int d = lo; d <= hi; ++d) {
                int cols = psi.source->sheaf->dim(U.back(k, 0, x), d);
                int rows = phi.target->sheaf->dim(h.g.at(0, U.front(k, 0, x)), d + m + nd - 1 - k);
                if (rows == 0 || cols == 0) continue;
                Matrix lhs(R, rows, cols), rhs(R, rows, cols);
                for (int i = 0; i <= k; ++i) {
                    int xl = U.front(k, i, x);
                    int xr = U.back(k, k - i, x);
                    for (int j = 0; j <= k - i; ++j) {
                        Matrix right = P.at(k - i + 1, h.at(k - i, j, xr), d);
                        Matrix left = F.at(i, h.g.at(i, xl), d + nd - 1 + i - k);
                        if (!left.rows() || !left.cols() || !right.rows() || !right.cols()) continue;
                        Matrix prod = left * right;
                        lhs = odd((m - i) * (k - i) + j) ? lhs - prod : lhs + prod;
                    }
                }
                for (int j = 0; j <= k; ++j) {
                    int hx = h.at(k, j, x);
                    for (int i = 0; i <= j; ++i) {
                        Matrix left = F.at(i, V.front(k + 1, i, hx), d + nd - 1 + i - k);
                        Matrix right = P.at(k - i + 1, V.back(k + 1, k - i + 1, hx), d);
                        if (!left.rows() || !left.cols() || !right.rows() || !right.cols()) continue;
                        Matrix prod = left * right;
                        rhs = odd(j + m + (m - i) * (k - i + 1)) ? rhs - prod : rhs + prod;
                    }
                }
                rep.count(fam);
                if (!(lhs == rhs))
                    rep.violation(fam, "k=" + std::to_string(k) + " x=" + U.ids[k][x] +
                                           " d=" + std::to_string(d));
            }
        }
    }
}

// back-side exchange: the (h^* phi)(rho) (f^* psi)(tau) double sum
void check_reindex_back_f(ValidationReport& rep, const SimplicialHomotopy& h,
                          const TwistedMorphism& phi, const TwistedMorphism& psi,
                          const std::string& fam) {
    const SimplicialSpace& U = *h.f.source;
    const SimplicialSpace& V = *h.f.target;
    const int m = phi.degree(), nd = psi.degree();
    const CechElement& F = phi.el;
    const CechElement& P = psi.el;
    const BaseRing& R = F.ring();
    if (!psi.source->sheaf->some_nonempty()) return;
    int lo = psi.source->sheaf->min_deg(), hi = psi.source->sheaf->max_deg();
    for (int k = 0; k <= std::min(static_cast<int>(h.h.size()) - 1, V.truncation - 1); ++k) {
        for (int x = 0; x < U.level_size(k); ++x) {
            for (int d = lo; d <= hi; ++d) {
                int cols = psi.source->sheaf->dim(U.back(k, 0, x), d);
                int rows = phi.target->sheaf->dim(h.g.at(0, U.front(k, 0, x)), d + m + nd - 1 - k);
                if (rows == 0 || cols == 0) continue;
                Matrix lhs(R, rows, cols), rhs(R, rows, cols);
                for (int i = 0; i <= k; ++i) {
                    int xl = U.front(k, i, x);
                    int xr = U.back(k, k - i, x);
                    for (int j = 0; j <= i; ++j) {
                        Matrix left = F.at(i + 1, h.at(i, j, xl), d + nd + i - k);
                        Matrix right = P.at(k - i, h.f.at(k - i, xr), d);
                        if (!left.rows() || !left.cols() || !right.rows() || !right.cols()) continue;
                        Matrix prod = left * right;
                        lhs = odd((m - i - 1) * (k - i) + j) ? lhs - prod : lhs + prod;
                    }
                }
                for (int j = 0; j <= k; ++j) {
                    int hx = h.at(k, j, x);
                    for (int i = j + 1; i <= k + 1; ++i) {
                        Matrix left = F.at(i, V.front(k + 1, i, hx), d + nd - 1 + i - k);
                        Matrix right = P.at(k - i + 1, V.back(k + 1, k - i + 1, hx), d);
                        if (!left.rows() || !left.cols() || !right.rows() || !right.cols()) continue;
                        Matrix prod = left * right;
                        rhs = odd(j + (m - i) * (k - i + 1)) ? rhs - prod : rhs + prod;
                    }
                }
                rep.count(fam);
                if (!(lhs == rhs))
                    rep.violation(fam, "k=" + std::to_string(k) + " x=" + U.ids[k][x] +
                                           " d=" + std::to_string(d));
            }
        }
    }
}

}  // namespace

ValidationReport verify_phi(const SimplicialHomotopy& h, const ProbeSet& probe, int max_level) {
    ValidationReport rep;
    AinfPrenat phi = build_phi(h);

    for (std::size_t i = 0; i < probe.objects.size(); ++i) {
        const TwistedComplex& T = *probe.objects[i];
        TwistedMorphism p0 = build_phi0(h, T);
        rep.count("phi0-closed");
        if (!morphism_diff(p0).is_zero()) rep.violation("phi0-closed", "object #" + std::to_string(i));
        rep.count("phi0-weak-equivalence");
        if (!is_weak_equivalence(p0))
            rep.violation("phi0-weak-equivalence", "object #" + std::to_string(i));
        check_reindex_face_h(rep, h, T, "reindex-face-h");
    }

    // level-1 identity: d Phi1(u) - Phi1(du) + (-1)^{m-1} g^*(u) Phi0(src)
    //                   + (-1)^m Phi0(tgt) f^*(u) = 0
    for (std::size_t i = 0; i < probe.morphisms.size(); ++i) {
        const TwistedMorphism& u = probe.morphisms[i];
        const int m = u.degree();
        TwistedMorphism acc = morphism_diff(build_phi1(h, u));
        acc = morphism_sub(acc, build_phi1(h, morphism_diff(u)));
        auto gs = pullback_twisted(h.g, *u.source);
        auto gt = pullback_twisted(h.g, *u.target);
        auto fs = pullback_twisted(h.f, *u.source);
        auto ft = pullback_twisted(h.f, *u.target);
        TwistedMorphism t3 =
            morphism_compose(pullback_morphism(h.g, u, gs, gt), build_phi0(h, *u.source));
        acc = morphism_add(acc, apply_sign(t3, odd(m - 1)));
        TwistedMorphism t4 =
            morphism_compose(build_phi0(h, *u.target), pullback_morphism(h.f, u, fs, ft));
        acc = morphism_add(acc, apply_sign(t4, odd(m)));
        rep.count("level1-identity");
        if (!acc.is_zero()) rep.violation("level1-identity", "morphism #" + std::to_string(i));
        // defect bookkeeping: nonzero defects confirm the level-1 term is doing work
        auto& defect = rep.family("naturality-defect (informative)");
        defect.informative = true;
        defect.instances++;
        if (!naturality_defect(h, u).is_zero())
            defect.violations.push_back("nonzero at morphism #" + std::to_string(i));
    }

    // level-2 identity: (-1)^{m-1} g^*(phi) Phi1(psi) + (-1)^{-m-n+1} Phi1(phi) f^*(psi)
    //                   + (-1)^m Phi1(phi psi) = 0
    for (std::size_t i = 0; i < probe.morphisms.size(); ++i) {
        for (std::size_t j = 0; j < probe.morphisms.size(); ++j) {
            const TwistedMorphism& ph = probe.morphisms[i];
            const TwistedMorphism& ps = probe.morphisms[j];
            if (!(*ps.target == *ph.source)) continue;
            const int m = ph.degree(), nd = ps.degree();
            auto gs = pullback_twisted(h.g, *ph.source);
            auto gt = pullback_twisted(h.g, *ph.target);
            auto fs = pullback_twisted(h.f, *ps.source);
            auto ft = pullback_twisted(h.f, *ps.target);
            TwistedMorphism t1 =
                morphism_compose(pullback_morphism(h.g, ph, gs, gt), build_phi1(h, ps));
            TwistedMorphism acc = apply_sign(t1, odd(m - 1));
            TwistedMorphism t2 =
                morphism_compose(build_phi1(h, ph), pullback_morphism(h.f, ps, fs, ft));
            acc = morphism_add(acc, apply_sign(t2, odd(-m - nd + 1)));
            TwistedMorphism t3 = build_phi1(h, morphism_compose(ph, ps));
            acc = morphism_add(acc, apply_sign(t3, odd(m)));
            rep.count("level2-identity");
            if (!acc.is_zero())
                rep.violation("level2-identity",
                              "pair (#" + std::to_string(i) + ", #" + std::to_string(j) + ")");
            check_reindex_front_g(rep, h, ph, ps, "reindex-front-g");
            check_reindex_back_f(rep, h, ph, ps, "reindex-back-f");
        }
    }

    rep.merge(prenat_vanishes(d_infinity(phi), probe, max_level, "dinf-phi"));
    return rep;
}

ValidationReport verify_quasi_inverse(const AinfPrenat& phi, const QuasiInverseWitness& w,
                                      const ProbeSet& probe, int max_level) {
    if (w.psi.degree != 0 || w.eta.degree != -1 || w.omega.degree != -1)
        throw StructuralError("quasi-inverse witness: degrees must be (0, -1, -1)");
    ValidationReport rep;
    AinfPrenat lhs1 = compose_ainf(w.psi, phi);
    AinfPrenat idF = identity_prenat(phi.f);
    AinfPrenat deta = d_infinity(w.eta);
    AinfPrenat lhs2 = compose_ainf(phi, w.psi);
    AinfPrenat idG = identity_prenat(phi.g);
    AinfPrenat domega = d_infinity(w.omega);

    auto residual0 = [&](const AinfPrenat& a, const AinfPrenat& b, const AinfPrenat& c,
                         const TwistedComplex& x) {
        return morphism_sub(morphism_sub(a.ev0(x), b.ev0(x)), c.ev0(x));
    };
    for (std::size_t i = 0; i < probe.objects.size(); ++i) {
        rep.count("psi-phi-eta level 0");
        if (!residual0(lhs1, idF, deta, *probe.objects[i]).is_zero())
            rep.violation("psi-phi-eta level 0", "object #" + std::to_string(i));
        rep.count("phi-psi-omega level 0");
        if (!residual0(lhs2, idG, domega, *probe.objects[i]).is_zero())
            rep.violation("phi-psi-omega level 0", "object #" + std::to_string(i));
    }
    for (int l = 1; l <= max_level; ++l) {
        std::string f1 = "psi-phi-eta level " + std::to_string(l);
        std::string f2 = "phi-psi-omega level " + std::to_string(l);
        for (const auto& tup : composable_tuples(probe, l)) {
            std::vector<TwistedMorphism> args;
            for (int i : tup) args.push_back(probe.morphisms[i]);
            rep.count(f1);
            TwistedMorphism r1 = morphism_sub(morphism_sub(lhs1.ev(l, args), idF.ev(l, args)),
                                              deta.ev(l, args));
            if (!r1.is_zero()) rep.violation(f1, "tuple size " + std::to_string(l));
            rep.count(f2);
            TwistedMorphism r2 = morphism_sub(morphism_sub(lhs2.ev(l, args), idG.ev(l, args)),
                                              domega.ev(l, args));
            if (!r2.is_zero()) rep.violation(f2, "tuple size " + std::to_string(l));
        }
        rep.family(f1);
        rep.family(f2);
    }
    return rep;
}

QuasiInverseCertificates quasi_inverse_exists(const AinfPrenat& phi, const ProbeSet& probe) {
    QuasiInverseCertificates out;
    for (const auto& obj : probe.objects) {
        TwistedMorphism m = phi.ev0(*obj);
        out.per_object.push_back(ho_invert(m));
        if (!out.per_object.back()) out.ok = false;
    }
    return out;
}

}  // namespace twc
