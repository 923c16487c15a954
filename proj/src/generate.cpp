#include "twc/generate.hpp"

#include <algorithm>

#include "twc/errors.hpp"

namespace twc::gen {

CoverSpec random_cover(SplitMix64& rng, int max_sets, int max_points) {
    int npts = 2 + static_cast<int>(rng.below(std::max(1, max_points - 1)));
    int nsets = 1 + static_cast<int>(rng.below(std::max(1, max_sets)));
    CoverSpec c;
    for (int i = 0; i < npts; ++i) c.points.push_back("p" + std::to_string(i));
    std::uint64_t all = npts >= 64 ? ~0ull : ((1ull << npts) - 1);
    std::uint64_t covered = 0;
    for (int j = 0; j < nsets; ++j) {
        std::uint64_t m = rng.next() & all;
        if (j + 1 == nsets) m |= all & ~covered;
        if (m == 0) m = 1ull << rng.below(npts);
        covered |= m;
        c.set_names.push_back(std::string(1, static_cast<char>('A' + j)));
        c.set_masks.push_back(m);
    }
    return c;
}

Matrix random_matrix(SplitMix64& rng, const BaseRing& ring, int rows, int cols, int density_pct) {
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            if (static_cast<int>(rng.below(100)) >= density_pct) continue;
            long long v = rng.range(-3, 3);
            if (v == 0) v = 1;
            m.set(i, j, ring.from_int(v));
        }
    }
    return m;
}

Matrix random_invertible(SplitMix64& rng, const BaseRing& ring, int n) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix m = random_matrix(rng, ring, n, n, 70);
        for (int i = 0; i < n; ++i) {
            if (m.at(i, i).is_zero()) m.set(i, i, ring.one());
        }
        if (rank(m) == n) return m;
    }
    return Matrix::identity(ring, n);
}

ComplexShape random_complex_shape(SplitMix64& rng, const BaseRing& ring, int min_deg, int amplitude,
                                  int max_rank) {
    // split shape: M^n = free part + pair parts mapped identically one degree up
    std::vector<int> free_rank(amplitude + 1), pair_rank(amplitude + 1, 0);
    for (int i = 0; i <= amplitude; ++i) free_rank[i] = static_cast<int>(rng.below(max_rank + 1));
    for (int i = 0; i + 1 <= amplitude; ++i) pair_rank[i] = static_cast<int>(rng.below(2));
    bool any = false;
    for (int i = 0; i <= amplitude; ++i) any = any || free_rank[i] > 0 || pair_rank[i] > 0;
    if (!any) free_rank[0] = 1;

    ComplexShape out;
    auto dim_at = [&](int off) {
        int d = free_rank[off] + pair_rank[off];
        if (off > 0) d += pair_rank[off - 1];
        return d;
    };
    for (int off = 0; off <= amplitude; ++off) {
        int d = dim_at(off);
        if (d > 0) out.mod.dims[min_deg + off] = d;
    }
    std::map<int, Matrix> split_diff;
    for (int off = 0; off + 1 <= amplitude; ++off) {
        if (pair_rank[off] == 0 || dim_at(off) == 0 || dim_at(off + 1) == 0) continue;
        Matrix d(ring, dim_at(off + 1), dim_at(off));
        for (int t = 0; t < pair_rank[off]; ++t)
            d.set(free_rank[off + 1] + pair_rank[off + 1] + t, free_rank[off] + t, ring.one());
        split_diff[min_deg + off] = std::move(d);
    }
    // conjugate by a random automorphism
    std::map<int, Matrix> P, Pinv;
    for (auto& [n, r] : out.mod.dims) {
        P[n] = random_invertible(rng, ring, r);
        Pinv[n] = *try_inverse(P[n]);
    }
    for (auto& [n, d] : split_diff) {
        out.diff[n] = P[n + 1] * d * Pinv[n];
    }
    return out;
}

TwistedPtr pullback_type_twisted(const SpacePtr& space, const BaseRing& ring,
                                 const ComplexShape& shape) {
    auto sheaf = std::make_shared<GradedSheaf>();
    sheaf->base = space;
    sheaf->ring = ring;
    sheaf->at.assign(space->level_size(0), shape.mod);
    CechElement a(sheaf, sheaf, 1);
    for (int x = 0; x < space->level_size(0); ++x) {
        for (auto& [n, d] : shape.diff) a.set(0, x, n, d);
    }
    if (space->truncation >= 1) {
        for (int y = 0; y < space->level_size(1); ++y) {
            for (auto& [n, r] : shape.mod.dims) {
                if (r > 0) a.set(1, y, n, Matrix::identity(ring, r));
            }
        }
    }
    return make_twisted(sheaf, std::move(a));
}

CechElement random_gauge_element(SplitMix64& rng, const SheafPtr& e, int max_level) {
    CechElement u(e, e, 0);
    const SimplicialSpace& sp = *e->base;
    for (int x = 0; x < sp.level_size(0); ++x) {
        for (auto& [n, r] : e->at[x].dims) {
            if (r > 0) u.set(0, x, n, random_invertible(rng, e->ring, r));
        }
    }
    for (int p = 1; p <= std::min(max_level, sp.truncation); ++p) {
        for (int x = 0; x < sp.level_size(p); ++x) {
            int xs = sp.back(p, 0, x), xt = sp.front(p, 0, x);
            for (auto& [n, r] : e->at[xs].dims) {
                int rows = e->at[xt].dim(n - p);
                if (r == 0 || rows == 0) continue;
                Matrix m = random_matrix(rng, e->ring, rows, r, 40);
                u.set(p, x, n, std::move(m));
            }
        }
    }
    return u;
}

TwistedPtr random_twisted(SplitMix64& rng, const SpacePtr& space, const BaseRing& ring, int min_deg,
                          int amplitude, int max_rank, int gauge_levels) {
    ComplexShape shape = random_complex_shape(rng, ring, min_deg, amplitude, max_rank);
    TwistedPtr base = pullback_type_twisted(space, ring, shape);
    CechElement u = random_gauge_element(rng, base->sheaf, gauge_levels);
    CechElement a2 = gauge_transform(u, base->a);
    return make_twisted(base->sheaf, std::move(a2));
}

TwistedMorphism random_morphism(SplitMix64& rng, const TwistedPtr& s, const TwistedPtr& t,
                                int degree, int density_pct) {
    TwistedMorphism m = zero_morphism(s, t, degree);
    const SimplicialSpace& sp = *s->sheaf->base;
    for (int p = 0; p <= sp.truncation; ++p) {
        for (int x = 0; x < sp.level_size(p); ++x) {
            int xs = sp.back(p, 0, x), xt = sp.front(p, 0, x);
            for (auto& [n, r] : s->sheaf->at[xs].dims) {
                int rows = t->sheaf->at[xt].dim(n + degree - p);
                if (r == 0 || rows == 0) continue;
                m.el.set(p, x, n, random_matrix(rng, s->sheaf->ring, rows, r, density_pct));
            }
        }
    }
    return m;
}

namespace {

SimplicialMap projection_to_base(const Cylinder& cyl) {
    SimplicialMap pr;
    pr.source = cyl.space;
    pr.target = cyl.base;
    const int N = cyl.base->truncation;
    pr.comp.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        pr.comp[n].resize(cyl.space->level_size(n));
        for (int x = 0; x < cyl.base->level_size(n); ++x) {
            for (int j = 0; j <= n + 1; ++j) pr.comp[n][cyl.pair_index(n, x, j)] = x;
        }
    }
    return pr;
}

}  // namespace

HomotopyInstance fold_homotopy_instance(SplitMix64& rng, int max_sets, int max_points,
                                        int truncation) {
    CoverSpec cover = random_cover(rng, max_sets, max_points);
    SpacePtr base = nerve(cover, truncation);
    Cylinder cylV = cylinder(base);
    SpacePtr W = cylV.space;
    Cylinder cylW = cylinder(W);
    bool use_max = rng.below(2) == 0;
    SimplicialMap H;
    H.source = cylW.space;
    H.target = W;
    H.comp.resize(truncation + 1);
    for (int n = 0; n <= truncation; ++n) {
        H.comp[n].resize(cylW.space->level_size(n));
        for (int x = 0; x < base->level_size(n); ++x) {
            for (int a = 0; a <= n + 1; ++a) {
                int w = cylV.pair_index(n, x, a);
                for (int b = 0; b <= n + 1; ++b) {
                    // zero-counts: pointwise min of values = max of counts
                    int fold = use_max ? std::min(a, b) : std::max(a, b);
                    H.comp[n][cylW.pair_index(n, w, b)] = cylV.pair_index(n, x, fold);
                }
            }
        }
    }
    auto ext = homotopy_from_cylinder(cylW, H);
    HomotopyInstance out;
    out.target = W;
    out.h = std::move(ext.homotopy);
    out.orientation = ext.orientation;
    out.kind = use_max ? "fold-max" : "fold-min";
    return out;
}

HomotopyInstance constant_homotopy_instance(SplitMix64& rng, int max_sets, int max_points,
                                            int truncation) {
    CoverSpec cover = random_cover(rng, max_sets, max_points);
    SpacePtr V = nerve(cover, truncation);
    Cylinder cyl = cylinder(V);
    SimplicialMap H = projection_to_base(cyl);
    auto ext = homotopy_from_cylinder(cyl, H);
    HomotopyInstance out;
    out.target = V;
    out.h = std::move(ext.homotopy);
    out.orientation = ext.orientation;
    out.kind = "constant";
    return out;
}

AinfPrenat random_prenat(SplitMix64& rng, const SimplicialMap& f, const SimplicialMap& g,
                         const ProbeSet& probe, int degree, int max_level) {
    struct Table {
        std::vector<TwistedPtr> objects;
        std::vector<std::vector<TwistedMorphism>> t;  // t[j][obj]: degree - j morphism f*X -> g*X
        SimplicialMap f, g;
        int degree;
        const TwistedMorphism& find(int j, const TwistedComplex& x) const {
            for (std::size_t i = 0; i < objects.size(); ++i) {
                if (*objects[i] == x) return t[j][i];
            }
            throw StructuralError("prenat table: object not in probe closure");
        }
    };
    auto tab = std::make_shared<Table>();
    tab->objects = probe.objects;
    tab->f = f;
    tab->g = g;
    tab->degree = degree;
    tab->t.resize(max_level + 1);
    for (int j = 0; j <= max_level; ++j) {
        for (const auto& obj : probe.objects) {
            auto fs = pullback_twisted(f, *obj);
            auto gs = pullback_twisted(g, *obj);
            tab->t[j].push_back(gen::random_morphism(rng, fs, gs, degree - j, 40));
        }
    }
    AinfPrenat p;
    p.f = f;
    p.g = g;
    p.degree = degree;
    p.level0 = [tab](const TwistedComplex& x) { return tab->find(0, x); };
    p.higher.resize(max_level);
    if (max_level >= 1) {
        p.higher[0] = [tab](const std::vector<TwistedMorphism>& args) {
            const TwistedMorphism& u = args[0];
            auto fs = pullback_twisted(tab->f, *u.source);
            auto ft = pullback_twisted(tab->f, *u.target);
            auto gs = pullback_twisted(tab->g, *u.source);
            auto gt = pullback_twisted(tab->g, *u.target);
            TwistedMorphism a = morphism_compose(tab->find(1, *u.target),
                                                 pullback_morphism(tab->f, u, fs, ft));
            TwistedMorphism b = morphism_compose(pullback_morphism(tab->g, u, gs, gt),
                                                 tab->find(1, *u.source));
            return morphism_add(a, b);
        };
    }
    if (max_level >= 2) {
        p.higher[1] = [tab](const std::vector<TwistedMorphism>& args) {
            const TwistedMorphism& u2 = args[0];
            const TwistedMorphism& u1 = args[1];
            auto fs = pullback_twisted(tab->f, *u1.source);
            auto ft = pullback_twisted(tab->f, *u1.target);
            auto gs = pullback_twisted(tab->g, *u2.source);
            auto gt = pullback_twisted(tab->g, *u2.target);
            TwistedMorphism mid = tab->find(2, *u1.target);
            return morphism_compose(
                pullback_morphism(tab->g, u2, gs, gt),
                morphism_compose(mid, pullback_morphism(tab->f, u1, fs, ft)));
        };
    }
    if (max_level >= 3) {
        p.higher[2] = [tab](const std::vector<TwistedMorphism>& args) {
            const TwistedMorphism& u3 = args[0];
            const TwistedMorphism& u2 = args[1];
            const TwistedMorphism& u1 = args[2];
            auto f21 = morphism_compose(u2, u1);
            auto fs = pullback_twisted(tab->f, *u1.source);
            auto ft = pullback_twisted(tab->f, *u2.target);
            auto gs = pullback_twisted(tab->g, *u3.source);
            auto gt = pullback_twisted(tab->g, *u3.target);
            TwistedMorphism mid = tab->find(3, *u2.target);
            return morphism_compose(
                pullback_morphism(tab->g, u3, gs, gt),
                morphism_compose(mid, pullback_morphism(tab->f, f21, fs, ft)));
        };
    }
    return p;
}

ProbeSet random_probe(SplitMix64& rng, const HomotopyInstance& inst, const BaseRing& ring,
                      int n_objects, int n_morphisms, int amplitude, int max_rank) {
    ProbeSet probe;
    int gauge_levels = std::max(1, amplitude);
    for (int i = 0; i < n_objects; ++i) {
        int min_deg = static_cast<int>(rng.range(-1, 1));
        probe.objects.push_back(
            random_twisted(rng, inst.target, ring, min_deg, amplitude, max_rank, gauge_levels));
    }
    // degree budget: the checked identities read one level above the component
    // level, so probe degrees keep amp + |u| + |v| - 1 within the window
    for (int i = 0; i < n_morphisms; ++i) {
        int si = static_cast<int>(rng.below(probe.objects.size()));
        int ti = static_cast<int>(rng.below(probe.objects.size()));
        int deg = static_cast<int>(rng.range(-1, 0));
        TwistedMorphism m =
            random_morphism(rng, probe.objects[si], probe.objects[ti], deg, 40);
        if (rng.below(3) == 0) m = morphism_diff(m);  // a closed representative
        probe.morphisms.push_back(std::move(m));
    }
    return probe;
}

}  // namespace twc::gen
