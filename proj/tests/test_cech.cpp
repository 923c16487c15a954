#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twc/cech.hpp"
#include "twc/errors.hpp"
#include "twc/generate.hpp"
#include "twc/rng.hpp"

using namespace twc;

namespace {

SpacePtr small_nerve(int truncation) {
    CoverSpec c;
    c.points = {"1", "2", "3"};
    c.set_names = {"A", "B"};
    c.set_masks = {0b011, 0b110};
    return nerve(c, truncation);
}

SpacePtr point_space(int truncation) {
    CoverSpec c;
    c.points = {"x"};
    c.set_names = {"U"};
    c.set_masks = {1};
    return nerve(c, truncation);
}

SheafPtr random_sheaf(SplitMix64& rng, const SpacePtr& sp, const BaseRing& ring, int min_deg,
                      int amplitude, int max_rank) {
    auto sh = std::make_shared<GradedSheaf>();
    sh->base = sp;
    sh->ring = ring;
    sh->at.resize(sp->level_size(0));
    for (auto& m : sh->at) {
        for (int off = 0; off <= amplitude; ++off) {
            int r = static_cast<int>(rng.below(max_rank + 1));
            if (r > 0) m.dims[min_deg + off] = r;
        }
        if (m.dims.empty()) m.dims[min_deg] = 1;
    }
    return sh;
}

SheafPtr constant_sheaf(const SpacePtr& sp, const BaseRing& ring, std::map<int, int> dims) {
    auto sh = std::make_shared<GradedSheaf>();
    sh->base = sp;
    sh->ring = ring;
    GradedModule m;
    m.dims = std::move(dims);
    sh->at.assign(sp->level_size(0), m);
    return sh;
}

CechElement random_element(SplitMix64& rng, const SheafPtr& src, const SheafPtr& tgt, int degree,
                           int density = 50) {
    CechElement u(src, tgt, degree);
    const SimplicialSpace& sp = *src->base;
    for (int p = 0; p <= sp.truncation; ++p) {
        for (int x = 0; x < sp.level_size(p); ++x) {
            int xs = sp.back(p, 0, x), xt = sp.front(p, 0, x);
            for (auto& [n, r] : src->at[xs].dims) {
                int rows = tgt->at[xt].dim(n + degree - p);
                if (r == 0 || rows == 0) continue;
                u.set(p, x, n, gen::random_matrix(rng, src->ring, rows, r, density));
            }
        }
    }
    return u;
}

CechSection random_section(SplitMix64& rng, const SheafPtr& sh, int degree, int density = 60) {
    CechSection c(sh, degree);
    const SimplicialSpace& sp = *sh->base;
    for (int p = 0; p <= sp.truncation; ++p) {
        for (int x = 0; x < sp.level_size(p); ++x) {
            int d = c.dim(p, x);
            if (d == 0) continue;
            std::vector<Rational> v(d, sh->ring.zero());
            for (auto& e : v) {
                if (static_cast<int>(rng.below(100)) < density) e = sh->ring.from_int(rng.range(-3, 3));
            }
            c.set(p, x, std::move(v));
        }
    }
    return c;
}

}  // namespace

TEST_CASE("identity element is a two-sided unit") {
    SplitMix64 rng(11);
    auto sp = small_nerve(4);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        auto e = random_sheaf(rng, sp, R, 0, 1, 2);
        auto f = random_sheaf(rng, sp, R, 0, 1, 2);
        CechElement id_e = CechElement::identity(e);
        CechElement id_f = CechElement::identity(f);
        for (int d = -1; d <= 1; ++d) {
            CechElement v = random_element(rng, e, f, d);
            CHECK(compose(id_f, v) == v);
            CHECK(compose(v, id_e) == v);
        }
        CechSection c = random_section(rng, e, 1);
        CHECK(act(id_e, c) == c);
    }
}

TEST_CASE("composition sign: odd sheaf degree against odd simplicial degree") {
    auto sp = point_space(3);
    BaseRing Q = BaseRing::rationals();
    auto e = constant_sheaf(sp, Q, {{0, 1}, {1, 1}, {2, 1}});
    // u has bidegree (0,1) with all entries 2; v has bidegree (1,0) with entries 3
    CechElement u(e, e, 1);
    for (int n = 0; n <= 1; ++n) {
        Matrix m(Q, 1, 1);
        m.set(0, 0, Rational(2));
        u.set(0, 0, n, m);
    }
    CechElement v(e, e, 1);
    {
        Matrix m(Q, 1, 1);
        m.set(0, 0, Rational(3));
        for (int n = 0; n <= 2; ++n) {
            if (v.tgt_dim(1, 0, n) == 1 && v.src_dim(1, 0, n) == 1) v.set(1, 0, n, m);
        }
    }
    CechElement uv = compose(u, v);
    // (u v)^{1,1} = (-1)^{1*1} u^{0,1} v^{1,0} = -6
    CHECK(uv.at(1, 0, 0).at(0, 0) == Rational(-6));
}

TEST_CASE("composition is associative") {
    SplitMix64 rng(12);
    auto sp = small_nerve(4);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        for (int t = 0; t < 6; ++t) {
            auto e1 = random_sheaf(rng, sp, R, 0, 1, 2);
            auto e2 = random_sheaf(rng, sp, R, 0, 1, 2);
            auto e3 = random_sheaf(rng, sp, R, 0, 1, 2);
            auto e4 = random_sheaf(rng, sp, R, 0, 1, 2);
            CechElement u = random_element(rng, e3, e4, static_cast<int>(rng.range(-1, 1)));
            CechElement v = random_element(rng, e2, e3, static_cast<int>(rng.range(-1, 1)));
            CechElement w = random_element(rng, e1, e2, static_cast<int>(rng.range(-1, 1)));
            CHECK(compose(compose(u, v), w) == compose(u, compose(v, w)));
        }
    }
}

TEST_CASE("module action is associative and unital") {
    SplitMix64 rng(13);
    auto sp = small_nerve(4);
    BaseRing Q = BaseRing::rationals();
    for (int t = 0; t < 6; ++t) {
        auto e = random_sheaf(rng, sp, Q, 0, 1, 2);
        CechElement u = random_element(rng, e, e, static_cast<int>(rng.range(-1, 1)));
        CechElement v = random_element(rng, e, e, static_cast<int>(rng.range(-1, 1)));
        CechSection c = random_section(rng, e, static_cast<int>(rng.range(0, 2)));
        CHECK(act(compose(u, v), c) == act(u, act(v, c)));
    }
}

TEST_CASE("action sign matches the composition sign rule") {
    auto sp = point_space(3);
    BaseRing Q = BaseRing::rationals();
    auto e = constant_sheaf(sp, Q, {{0, 1}, {1, 1}});
    // u of bidegree (0,1), scalar 2; section piece at (1, 0) of internal degree 0
    CechElement u(e, e, 1);
    Matrix m(Q, 1, 1);
    m.set(0, 0, Rational(2));
    u.set(0, 0, 0, m);
    CechSection c(e, 1);  // degree 1 total: piece (1, 0)
    c.set(1, 0, {Rational(3)});
    CechSection uc = act(u, c);
    // (-1)^{q r} = (-1)^{1*1}: result piece (1, 1) equals -6
    CHECK(uc.at(1, 0) == std::vector<Rational>{Rational(-6)});
}

TEST_CASE("interior-face differential vanishes on level-0 Hom pieces") {
    SplitMix64 rng(14);
    auto sp = small_nerve(3);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, sp, Q, 0, 1, 2);
    CechElement u = random_element(rng, e, e, 0);
    CechElement u0 = u.piece(0);
    CHECK(delta_hom(u0).is_zero());
}

TEST_CASE("section differential at level 0 is minus the first-face pullback") {
    SplitMix64 rng(15);
    auto sp = small_nerve(3);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, sp, Q, 0, 1, 2);
    CechSection c = random_section(rng, e, 0);
    // keep only the level-0 part
    CechSection c0(e, 0);
    for (auto& [k, v] : c.comps()) {
        if (k.first == 0) c0.set(0, k.second, v);
    }
    CechSection dc = delta_section(c0);
    const SimplicialSpace& S = *sp;
    for (int y = 0; y < S.level_size(1); ++y) {
        auto got = dc.at(1, y);
        auto expect = c0.at(0, S.face(1, 1, y));
        for (auto& v : expect) v = Q.neg(v);
        CHECK(got == expect);
    }
}

TEST_CASE("the differential squares to zero") {
    SplitMix64 rng(16);
    auto sp = small_nerve(4);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        for (int t = 0; t < 6; ++t) {
            auto e = random_sheaf(rng, sp, R, 0, 1, 2);
            auto f = random_sheaf(rng, sp, R, 0, 1, 2);
            CechElement u = random_element(rng, e, f, static_cast<int>(rng.range(-1, 1)));
            CHECK(delta_hom(delta_hom(u)).is_zero());
            CechSection c = random_section(rng, e, static_cast<int>(rng.range(0, 2)));
            CHECK(delta_section(delta_section(c)).is_zero());
        }
    }
}

TEST_CASE("Leibniz rule for the differential") {
    SplitMix64 rng(17);
    auto sp = small_nerve(4);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        for (int t = 0; t < 6; ++t) {
            auto e1 = random_sheaf(rng, sp, R, 0, 1, 2);
            auto e2 = random_sheaf(rng, sp, R, 0, 1, 2);
            auto e3 = random_sheaf(rng, sp, R, 0, 1, 2);
            int du = static_cast<int>(rng.range(-1, 1));
            CechElement u = random_element(rng, e2, e3, du);
            CechElement v = random_element(rng, e1, e2, static_cast<int>(rng.range(-1, 1)));
            CechElement lhs = delta_hom(compose(u, v));
            CechElement rhs = compose(delta_hom(u), v);
            CechElement second = compose(u, delta_hom(v));
            rhs = (du % 2 != 0) ? rhs - second : rhs + second;
            CHECK(lhs == rhs);
        }
        // module version
        auto e = random_sheaf(rng, sp, R, 0, 1, 2);
        int du = 1;
        CechElement u = random_element(rng, e, e, du);
        CechSection c = random_section(rng, e, 1);
        CechSection lhs = delta_section(act(u, c));
        CechSection rhs = act(delta_hom(u), c) - act(u, delta_section(c));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("pullback along the identity is the identity") {
    SplitMix64 rng(18);
    auto sp = small_nerve(3);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, sp, Q, 0, 1, 2);
    auto f = random_sheaf(rng, sp, Q, 0, 1, 2);
    CechElement u = random_element(rng, e, f, 1);
    SimplicialMap id = SimplicialMap::identity(sp);
    CechElement pulled = pullback_element(id, u);
    CHECK(pulled.degree() == u.degree());
    CHECK(pulled.comps() == u.comps());
}

TEST_CASE("pullback is a map of differential graded algebras") {
    SplitMix64 rng(19);
    // eps0: base -> cylinder gives a genuinely non-identity simplicial map
    auto base = small_nerve(3);
    auto cyl = cylinder(base);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, cyl.space, Q, 0, 1, 2);
    auto f = random_sheaf(rng, cyl.space, Q, 0, 1, 2);
    auto g = random_sheaf(rng, cyl.space, Q, 0, 1, 2);
    const SimplicialMap& m = cyl.eps0;
    for (int t = 0; t < 4; ++t) {
        CechElement u = random_element(rng, f, g, static_cast<int>(rng.range(-1, 1)));
        CechElement v = random_element(rng, e, f, static_cast<int>(rng.range(-1, 1)));
        // delta commutes
        CHECK(pullback_element(m, delta_hom(u)) == delta_hom(pullback_element(m, u)));
        // composition is preserved
        auto pe = pullback_sheaf_ptr(m, e);
        auto pf = pullback_sheaf_ptr(m, f);
        auto pg = pullback_sheaf_ptr(m, g);
        CHECK(pullback_element(m, compose(u, v), pe, pg) ==
              compose(pullback_element(m, u, pf, pg), pullback_element(m, v, pe, pf)));
    }
    // identity is preserved
    CechElement id_e = CechElement::identity(e);
    auto pe = pullback_sheaf_ptr(m, e);
    CHECK(pullback_element(m, id_e, pe, pe) == CechElement::identity(pe));
}

TEST_CASE("pullback along a composite is the composite of pullbacks") {
    SplitMix64 rng(20);
    auto base = small_nerve(3);
    auto cyl1 = cylinder(base);
    auto cyl2 = cylinder(cyl1.space);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, base, Q, 0, 1, 2);
    CechElement u = random_element(rng, e, e, 1);
    // maps: eps0: base -> cyl1.space is wrong direction; use projections instead
    // build projection cyl1.space -> base and cyl2.space -> cyl1.space
    SimplicialMap pr1;
    pr1.source = cyl1.space;
    pr1.target = base;
    pr1.comp.resize(base->truncation + 1);
    for (int n = 0; n <= base->truncation; ++n) {
        pr1.comp[n].resize(cyl1.space->level_size(n));
        for (int x = 0; x < base->level_size(n); ++x)
            for (int j = 0; j <= n + 1; ++j) pr1.comp[n][cyl1.pair_index(n, x, j)] = x;
    }
    SimplicialMap pr2;
    pr2.source = cyl2.space;
    pr2.target = cyl1.space;
    pr2.comp.resize(base->truncation + 1);
    for (int n = 0; n <= base->truncation; ++n) {
        pr2.comp[n].resize(cyl2.space->level_size(n));
        for (int x = 0; x < cyl1.space->level_size(n); ++x)
            for (int j = 0; j <= n + 1; ++j) pr2.comp[n][cyl2.pair_index(n, x, j)] = x;
    }
    REQUIRE(validate_map(pr1).all_pass());
    REQUIRE(validate_map(pr2).all_pass());
    SimplicialMap comp = compose_maps(pr1, pr2);
    CHECK(pullback_element(comp, u) == pullback_element(pr2, pullback_element(pr1, u)));
}

TEST_CASE("graded inversion by the finite geometric series") {
    SplitMix64 rng(21);
    auto sp = small_nerve(3);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(7)}) {
        auto e = random_sheaf(rng, sp, R, 0, 2, 2);
        CechElement id = CechElement::identity(e);
        CHECK(invert_graded(id) == id);
        // u = 1 + n with n supported in positive simplicial degrees
        CechElement n_part = random_element(rng, e, e, 0, 40);
        for (int x = 0; x < sp->level_size(0); ++x) {
            for (auto& [d, r] : e->at[x].dims) n_part.set(0, x, d, Matrix(R, r, r));
        }
        CechElement u = id + n_part;
        CechElement inv = invert_graded(u);
        // independent series: sum (-n)^k
        CechElement expect = id;
        CechElement term = id;
        for (int k = 1; k <= sp->truncation; ++k) {
            term = -compose(n_part, term);
            expect = expect + term;
        }
        CHECK(inv == expect);
        CHECK(compose(u, inv) == id);
        // full random gauge elements invert too
        CechElement g = gen::random_gauge_element(rng, e, 2);
        CechElement ginv = invert_graded(g);
        CHECK(compose(g, ginv) == id);
        CHECK(compose(ginv, g) == id);
    }
}

TEST_CASE("inversion reports the singular point") {
    auto sp = small_nerve(2);
    BaseRing Q = BaseRing::rationals();
    auto e = constant_sheaf(sp, Q, {{0, 1}});
    CechElement u(e, e, 0);
    Matrix one(Q, 1, 1);
    one.set(0, 0, Rational(1));
    u.set(0, 0, 0, one);  // point B keeps a zero block
    CHECK_THROWS_WITH_AS(invert_graded(u), doctest::Contains("singular"), StructuralError);
}

TEST_CASE("gauge transformation: identity, flatness, and inverse recovery") {
    SplitMix64 rng(22);
    auto sp = small_nerve(4);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        auto shape = gen::random_complex_shape(rng, R, 0, 2, 2);
        auto base = gen::pullback_type_twisted(sp, R, shape);
        CechElement id = CechElement::identity(base->sheaf);
        CHECK(gauge_transform(id, base->a) == base->a);

        CechElement u = gen::random_gauge_element(rng, base->sheaf, 2);
        CechElement a2 = gauge_transform(u, base->a);
        CHECK(curvature(a2).is_zero());
        // gauging back recovers the original
        CechElement back = gauge_transform(invert_graded(u), a2);
        CHECK(back == base->a);
    }
}

TEST_CASE("gauge of a pullback-type connection has higher components") {
    SplitMix64 rng(23);
    auto sp = small_nerve(4);
    BaseRing Q = BaseRing::rationals();
    auto shape = gen::random_complex_shape(rng, Q, 0, 2, 3);
    auto base = gen::pullback_type_twisted(sp, Q, shape);
    bool saw_higher = false;
    for (int t = 0; t < 8 && !saw_higher; ++t) {
        CechElement u = gen::random_gauge_element(rng, base->sheaf, 2);
        CechElement a2 = gauge_transform(u, base->a);
        for (auto& [k, m] : a2.comps())

            if (k.p >= 2) saw_higher = true;
    }
    CHECK(saw_higher);
}

TEST_CASE("degree bookkeeping of the calculus") {
    SplitMix64 rng(24);
    auto sp = small_nerve(3);
    BaseRing Q = BaseRing::rationals();
    auto e = random_sheaf(rng, sp, Q, 0, 1, 2);
    CechElement u = random_element(rng, e, e, 1);
    CechElement v = random_element(rng, e, e, -1);
    CHECK(compose(u, v).degree() == 0);
    CHECK(delta_hom(u).degree() == 2);
    CechSection c = random_section(rng, e, 1);
    CHECK(act(u, c).degree() == 2);
    CHECK(delta_section(c).degree() == 2);
}

TEST_CASE("the window is a quotient: algebra laws survive truncation") {
    // components at level t only ever involve levels <= t, so dropping
    // beyond-window output is an algebra quotient, not an approximation
    SplitMix64 rng(25);
    auto sp2 = point_space(2);
    auto sp4 = point_space(4);
    BaseRing Q = BaseRing::rationals();
    auto e2 = constant_sheaf(sp2, Q, {{0, 1}, {1, 1}, {2, 1}});
    auto e4 = constant_sheaf(sp4, Q, {{0, 1}, {1, 1}, {2, 1}});
    for (int t = 0; t < 10; ++t) {
        CechElement a2 = random_element(rng, e2, e2, 1, 80);
        // the same element in the larger window
        CechElement a4(e4, e4, 1);
        for (auto& [k, m] : a2.comps()) a4.set(k.p, k.x, k.n, m);
        CechElement sq2 = compose(a2, a2);
        CechElement sq4 = compose(a4, a4);
        for (auto& [k, m] : sq2.comps()) CHECK(sq4.at(k.p, k.x, k.n) == m);
        for (auto& [k, m] : sq4.comps()) {
            if (k.p <= 2) CHECK(sq2.at(k.p, k.x, k.n) == m);
        }
        // delta of a top-level piece is quotiented away, and delta^2 = 0 survives
        CHECK(delta_hom(a2.piece(2)).is_zero());
        CHECK(delta_hom(delta_hom(a2)).is_zero());
    }
}
