#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twc/ainf.hpp"
#include "twc/errors.hpp"
#include "twc/generate.hpp"
#include "twc/rng.hpp"

using namespace twc;

namespace {

struct Setup {
    gen::HomotopyInstance inst;
    ProbeSet probe;
};

Setup make_setup(SplitMix64& rng, const BaseRing& ring, bool fold, int n_objects = 2,
                 int n_morphisms = 3, int max_sets = 2) {
    Setup s;
    s.inst = fold ? gen::fold_homotopy_instance(rng, max_sets, 3, 4)
                  : gen::constant_homotopy_instance(rng, max_sets, 4, 4);
    s.probe = gen::random_probe(rng, s.inst, ring, n_objects, n_morphisms, 1, 2);
    return s;
}

}  // namespace

TEST_CASE("strict transformations are closed at levels 0 and 1") {
    SplitMix64 rng(51);
    auto s = make_setup(rng, BaseRing::rationals(), true);
    AinfPrenat id = identity_prenat(s.inst.h.f);
    AinfPrenat d = d_infinity(id);
    auto rep = prenat_vanishes(d, s.probe, 1, "d-identity");
    CHECK(rep.all_pass());
}

TEST_CASE("level-1 differential of a level-0-only prenat matches the frozen formula") {
    SplitMix64 rng(52);
    auto s = make_setup(rng, BaseRing::rationals(), true);
    const auto& h = s.inst.h;
    AinfPrenat phi = gen::random_prenat(rng, h.f, h.g, s.probe, 0, 0);  // level 0 only, degree 0
    AinfPrenat d = d_infinity(phi);
    for (const auto& u : s.probe.morphisms) {
        auto fs = pullback_twisted(h.f, *u.source);
        auto ft = pullback_twisted(h.f, *u.target);
        auto gs = pullback_twisted(h.g, *u.source);
        auto gt = pullback_twisted(h.g, *u.target);
        // (-1)^{|u|} Phi0_{X1} F(u) + (-1)^{|u|+1} G(u) Phi0_{X0}
        TwistedMorphism t1 = morphism_compose(phi.ev0(*u.target),
                                              pullback_morphism(h.f, u, fs, ft));
        TwistedMorphism t2 = morphism_compose(pullback_morphism(h.g, u, gs, gt),
                                              phi.ev0(*u.source));
        bool odd_u = (u.degree() % 2 + 2) % 2 == 1;
        TwistedMorphism expect = odd_u ? morphism_sub(t2, t1) : morphism_sub(t1, t2);
        CHECK(d.ev(1, {u}).el == expect.el);
    }
}

TEST_CASE("the prenat differential squares to zero") {
    SplitMix64 rng(53);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        for (bool fold : {true, false}) {
            auto s = make_setup(rng, R, fold);
            for (int deg = -1; deg <= 1; ++deg) {
                AinfPrenat phi = gen::random_prenat(rng, s.inst.h.f, s.inst.h.g, s.probe, deg, 3);
                AinfPrenat dd = d_infinity(d_infinity(phi));
                auto rep = prenat_vanishes(dd, s.probe, 3, "dd");
                CHECK(rep.all_pass());
                if (!rep.all_pass()) {
                    FAIL_CHECK(rep.summary());
                }
            }
        }
    }
}

TEST_CASE("composition of closed prenats is closed, and identity is neutral") {
    SplitMix64 rng(54);
    auto s = make_setup(rng, BaseRing::rationals(), true);
    const auto& h = s.inst.h;
    // closed degree-0 prenats: exact ones plus the homotopy-induced one
    AinfPrenat xi = gen::random_prenat(rng, h.g, h.g, s.probe, -1, 3);
    AinfPrenat psi = d_infinity(xi);  // g* => g*, degree 0, closed
    AinfPrenat phi = build_phi(h);    // f* => g*, degree 0, closed
    AinfPrenat comp = compose_ainf(psi, phi);
    auto rep = prenat_vanishes(d_infinity(comp), s.probe, 3, "d-comp");
    CHECK(rep.all_pass());
    if (!rep.all_pass()) FAIL_CHECK(rep.summary());

    // identity transformation is a unit for the composition
    AinfPrenat idg = identity_prenat(h.g);
    AinfPrenat comp2 = compose_ainf(idg, phi);
    for (const auto& obj : s.probe.objects) {
        CHECK(comp2.ev0(*obj).el == phi.ev0(*obj).el);
    }
    for (const auto& u : s.probe.morphisms) {
        CHECK(comp2.ev(1, {u}).el == phi.ev(1, {u}).el);
    }
}

TEST_CASE("level-1 of a composition matches the two-term expansion") {
    SplitMix64 rng(55);
    auto s = make_setup(rng, BaseRing::rationals(), true);
    const auto& h = s.inst.h;
    AinfPrenat phi = build_phi(h);
    AinfPrenat psi = d_infinity(gen::random_prenat(rng, h.g, h.g, s.probe, -1, 2));
    AinfPrenat comp = compose_ainf(psi, phi);
    for (const auto& u : s.probe.morphisms) {
        TwistedMorphism expect = morphism_add(
            morphism_compose(psi.ev(1, {u}), phi.ev0(*u.source)),
            morphism_compose(psi.ev0(*u.target), phi.ev(1, {u})));
        CHECK(comp.ev(1, {u}).el == expect.el);
    }
}

TEST_CASE("point-target transformations degenerate to the edge transition") {
    SplitMix64 rng(56);
    BaseRing Q = BaseRing::rationals();
    auto s = make_setup(rng, Q, false, 1, 1);  // constant homotopy: f = g = id
    // over a point space instead: rebuild with a single-set cover
    CoverSpec c;
    c.points = {"x"};
    c.set_names = {"U"};
    c.set_masks = {1};
    auto V = nerve(c, 3);
    auto cyl = cylinder(V);
    SimplicialMap H;
    H.source = cyl.space;
    H.target = V;
    H.comp.resize(4);
    for (int n = 0; n <= 3; ++n) H.comp[n].assign(cyl.space->level_size(n), 0);
    auto ext = homotopy_from_cylinder(cyl, H);
    gen::ComplexShape shape;
    shape.mod.dims = {{0, 1}, {1, 1}};
    shape.diff[0] = Matrix::identity(Q, 1);
    auto t = gen::pullback_type_twisted(V, Q, shape);
    TwistedMorphism p0 = build_phi0(ext.homotopy, *t);
    // only the level-0 piece survives and equals the identity edge transition
    CHECK(p0.el.piece(0).comps().size() == 2);
    for (auto& [k, m] : p0.el.comps()) {
        CHECK(k.p == 0);
        CHECK(m.is_identity());
    }
    CHECK(morphism_diff(p0).is_zero());
    CHECK(is_weak_equivalence(p0));
    // level-1 component formula at a point target: [Phi1(u)]^{0,m-1} = (-1)^{m-1} u^{1,m-1}
    auto t2 = gen::random_twisted(rng, V, Q, 0, 1, 2, 1);
    TwistedMorphism u = gen::random_morphism(rng, t2, t2, 1);
    TwistedMorphism p1 = build_phi1(ext.homotopy, u);
    CHECK(p1.el.at(0, 0, 0) == u.el.at(1, 0, 0));  // m = 1: sign +1
}

TEST_CASE("the homotopy-induced transformation verifies in full") {
    SplitMix64 rng(57);
    int checked_defect = 0;
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        for (bool fold : {true, false}) {
            auto s = make_setup(rng, R, fold);
            auto rep = verify_phi(s.inst.h, s.probe, 3);
            CHECK(rep.all_pass());
            if (!rep.all_pass()) FAIL_CHECK((s.inst.kind + "\n" + rep.summary()));
            for (auto& it : rep.items) {
                if (it.name.find("naturality-defect") != std::string::npos)
                    checked_defect += static_cast<int>(it.violations.size());
            }
        }
    }
    CHECK(checked_defect > 0);  // the defect witness exists somewhere in the corpus
}

TEST_CASE("quasi-inverse witnesses: identity case and located corruption") {
    SplitMix64 rng(58);
    auto s = make_setup(rng, BaseRing::rationals(), true);
    const auto& h = s.inst.h;
    // Phi = id Psi = id eta = omega = 0 over the f-pullback
    AinfPrenat idf = identity_prenat(h.f);
    QuasiInverseWitness w;
    w.psi = identity_prenat(h.f);
    w.eta = AinfPrenat{h.f, h.f, -1, {}, {}};
    w.omega = AinfPrenat{h.f, h.f, -1, {}, {}};
    auto rep = verify_quasi_inverse(idf, w, s.probe, 2);
    CHECK(rep.all_pass());

    // corrupt omega: nonzero level-0 component leaves a located residual
    SplitMix64 rng2(59);
    QuasiInverseWitness wbad = w;
    auto tab = std::make_shared<std::vector<std::pair<TwistedComplex, TwistedMorphism>>>();
    for (const auto& obj : s.probe.objects) {
        auto fx = pullback_twisted(h.f, *obj);
        tab->emplace_back(*obj, gen::random_morphism(rng2, fx, fx, -1, 80));
    }
    wbad.omega.level0 = [tab](const TwistedComplex& x) -> TwistedMorphism {
        for (auto& [o, m] : *tab) {
            if (o == x) return m;
        }
        throw StructuralError("not in table");
    };
    auto rep2 = verify_quasi_inverse(idf, wbad, s.probe, 1);
    CHECK_FALSE(rep2.all_pass());
    bool located = false;
    for (auto& it : rep2.items) {
        if (!it.pass && it.name.find("omega") != std::string::npos) located = true;
    }
    CHECK(located);
}

TEST_CASE("objectwise homotopy invertibility of the induced transformation") {
    SplitMix64 rng(60);
    for (BaseRing R : {BaseRing::rationals(), BaseRing::prime_field(101)}) {
        auto s = make_setup(rng, R, true, 2, 2, 1);
        AinfPrenat phi = build_phi(s.inst.h);
        auto certs = quasi_inverse_exists(phi, s.probe);
        CHECK(certs.ok);
        for (auto& c : certs.per_object) REQUIRE(c.has_value());
    }
    // a transformation with a zero component on a homology-carrying object fails
    SplitMix64 rng2(61);
    auto s = make_setup(rng2, BaseRing::rationals(), true, 1, 1, 1);
    gen::ComplexShape shape;
    shape.mod.dims = {{0, 1}};
    auto pt = gen::pullback_type_twisted(s.inst.target, BaseRing::rationals(), shape);
    ProbeSet probe;
    probe.objects = {pt};
    AinfPrenat zero;
    zero.f = s.inst.h.f;
    zero.g = s.inst.h.g;
    zero.degree = 0;
    auto certs = quasi_inverse_exists(zero, probe);
    CHECK_FALSE(certs.ok);

    // single object, identity component: trivially invertible
    AinfPrenat idp = identity_prenat(s.inst.h.f);
    ProbeSet probe2;
    probe2.objects = {pt};
    auto certs2 = quasi_inverse_exists(idp, probe2);
    CHECK(certs2.ok);
}

TEST_CASE("lifted objectwise witnesses pass the level-0 equations") {
    SplitMix64 rng(62);
    auto s = make_setup(rng, BaseRing::prime_field(101), true, 2, 2, 1);
    const auto& h = s.inst.h;
    AinfPrenat phi = build_phi(h);
    auto certs = quasi_inverse_exists(phi, s.probe);
    REQUIRE(certs.ok);
    auto tab = std::make_shared<std::vector<std::pair<TwistedComplex, HoInverse>>>();
    for (std::size_t i = 0; i < s.probe.objects.size(); ++i)
        tab->emplace_back(*s.probe.objects[i], *certs.per_object[i]);
    auto lookup = [tab](const TwistedComplex& x) -> const HoInverse& {
        for (auto& [o, w] : *tab) {
            if (o == x) return w;
        }
        throw StructuralError("witness table: object not in probe");
    };
    QuasiInverseWitness w;
    w.psi = AinfPrenat{h.g, h.f, 0,
                       [lookup](const TwistedComplex& x) { return lookup(x).psi; },
                       {}};
    w.eta = AinfPrenat{h.f, h.f, -1,
                       [lookup](const TwistedComplex& x) { return lookup(x).eta; },
                       {}};
    w.omega = AinfPrenat{h.g, h.g, -1,
                         [lookup](const TwistedComplex& x) { return lookup(x).omega; },
                         {}};
    auto rep = verify_quasi_inverse(phi, w, s.probe, 1);
    for (auto& it : rep.items) {
        if (it.name.find("level 0") != std::string::npos) {
            CHECK(it.pass);
        }
    }
}

TEST_CASE("the level-1 component is linear and kills zero") {
    SplitMix64 rng(63);
    auto s = make_setup(rng, BaseRing::rationals(), true, 2, 1);
    auto z = zero_morphism(s.probe.objects[0], s.probe.objects[1], 0);
    CHECK(build_phi1(s.inst.h, z).is_zero());
    const auto& u = s.probe.morphisms[0];
    TwistedMorphism doubled = morphism_add(u, u);
    CHECK(build_phi1(s.inst.h, doubled).el == morphism_add(build_phi1(s.inst.h, u),
                                                           build_phi1(s.inst.h, u)).el);
}

TEST_CASE("constant homotopies: level-1 values match the degeneracy expansion") {
    SplitMix64 rng(64);
    auto s = make_setup(rng, BaseRing::rationals(), false, 2, 2);  // constant: f = g = id
    const auto& h = s.inst.h;
    REQUIRE(s.inst.kind == "constant");
    const SimplicialSpace& U = *h.f.source;
    for (const auto& u : s.probe.morphisms) {
        const int m = u.degree();
        TwistedMorphism p1 = build_phi1(h, u);
        // independent expansion: (-1)^{m-1} sum_i (-1)^i u^{k+1} at s_i(f(x))
        bool flip = ((m - 1) % 2 + 2) % 2 == 1;
        for (int k = 0; k < h.levels(); ++k) {
            for (int x = 0; x < U.level_size(k); ++x) {
                if (!u.source->sheaf->some_nonempty()) continue;
                for (int n = u.source->sheaf->min_deg(); n <= u.source->sheaf->max_deg(); ++n) {
                    int rows = p1.el.tgt_dim(k, x, n), cols = p1.el.src_dim(k, x, n);
                    if (rows == 0 || cols == 0) continue;
                    Matrix expect(u.el.ring(), rows, cols);
                    for (int i = 0; i <= k; ++i) {
                        int si_fx = U.degeneracy(k, i, h.f.at(k, x));
                        Matrix term = u.el.at(k + 1, si_fx, n);
                        bool neg = ((i % 2 != 0) != flip);
                        expect = neg ? expect - term : expect + term;
                    }
                    CHECK(p1.el.at(k, x, n) == expect);
                }
            }
        }
    }
}
