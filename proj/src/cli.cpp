#include "twc/cli.hpp"

#include <json.hpp>

#include "twc/errors.hpp"

namespace twc::cli {

using json = nlohmann::ordered_json;

ValidationReport cmd_validate(const InstanceBundle& b) {
    ValidationReport rep;
    for (const auto& [name, sp] : b.spaces) {
        rep.merge(validate_simplicial(*sp), "space " + name);
        rep.merge(validate_face_composites(*sp), "space " + name);
    }
    for (const auto& [name, nm] : b.maps) {
        rep.merge(validate_map(nm.map), "map " + name);
        rep.merge(validate_map_composites(nm.map), "map " + name);
    }
    for (const auto& [name, nh] : b.homotopies) {
        rep.merge(validate_homotopy(nh.h), "homotopy " + name);
    }
    std::map<std::string, bool> flat;
    for (const auto& [name, nt] : b.twisted) {
        ValidationReport t = validate_twisted(*nt.t);
        flat[name] = t.all_pass();
        rep.merge(t, "twisted " + name);
    }
    for (const auto& [name, nm] : b.morphisms) {
        std::string fam = "morphism " + name + ".d-squared";
        if (!flat[nm.source] || !flat[nm.target]) {
            auto& item = rep.family(fam + " (skipped: endpoint invalid)");
            item.informative = true;
            continue;
        }
        rep.count(fam);
        if (!morphism_diff(morphism_diff(nm.m)).is_zero())
            rep.violation(fam, "d(d(" + name + ")) != 0");
    }
    return rep;
}

PhiResult cmd_phi(const InstanceBundle& b, const std::string& homotopy, const std::string& probe,
                  int max_level) {
    auto hit = b.homotopies.find(homotopy);
    if (hit == b.homotopies.end())
        throw StructuralError("phi: no homotopy named \"" + homotopy + "\"");
    auto pit = b.probes.find(probe);
    if (pit == b.probes.end()) throw StructuralError("phi: no probe named \"" + probe + "\"");
    const SimplicialHomotopy& h = hit->second.h;
    ProbeSet ps = b.probe(probe);

    PhiResult out;
    out.report = verify_phi(h, ps, max_level);
    AinfPrenat phi = build_phi(h);
    auto certs = quasi_inverse_exists(phi, ps);
    auto& crit = out.report.family("quasi-inverse-criterion");
    crit.instances = static_cast<long long>(ps.objects.size());
    for (std::size_t i = 0; i < certs.per_object.size(); ++i) {
        if (!certs.per_object[i]) {
            crit.pass = false;
            crit.violations.push_back("no homotopy inverse at object " + pit->second.objects[i]);
        }
    }

    json comp;
    json phi0;
    for (std::size_t i = 0; i < ps.objects.size(); ++i) {
        phi0[pit->second.objects[i]] =
            json::parse(morphism_components_json(build_phi0(h, *ps.objects[i])));
    }
    comp["phi0"] = std::move(phi0);
    json phi1;
    for (std::size_t i = 0; i < ps.morphisms.size(); ++i) {
        phi1[pit->second.morphisms[i]] =
            json::parse(morphism_components_json(build_phi1(h, ps.morphisms[i])));
    }
    comp["phi1"] = std::move(phi1);
    out.components_json = comp.dump(2) + "\n";
    return out;
}

InstanceBundle cmd_generate(const GenerateOptions& opts) {
    if (opts.max_sets < 1 || opts.max_sets > 6) throw StructuralError("generate: max_sets must be 1..6");
    if (opts.max_points < 2 || opts.max_points > 8)
        throw StructuralError("generate: max_points must be 2..8");
    if (opts.truncation < 2 || opts.truncation > 5)
        throw StructuralError("generate: truncation must be 2..5");
    if (opts.amplitude < 0 || opts.amplitude > 3)
        throw StructuralError("generate: amplitude must be 0..3");
    if (opts.truncation < opts.amplitude + 2)
        throw StructuralError("generate: truncation must be at least amplitude + 2");
    if (opts.max_rank < 1 || opts.max_rank > 4) throw StructuralError("generate: max_rank must be 1..4");
    if (opts.objects < 1 || opts.objects > 6) throw StructuralError("generate: objects must be 1..6");
    if (opts.morphisms < 0 || opts.morphisms > 12)
        throw StructuralError("generate: morphisms must be 0..12");

    BaseRing ring = BaseRing::rationals();
    if (opts.ring != "Q") {
        if (opts.ring.size() < 2 || opts.ring[0] != 'F')
            throw StructuralError("generate: ring must be Q or F<p>");
        ring = BaseRing::prime_field(std::stoull(opts.ring.substr(1)));
    }

    SplitMix64 rng(opts.seed);
    gen::HomotopyInstance inst;
    bool fold = opts.kind == "fold" || (opts.kind == "auto" && rng.below(2) == 0);
    if (opts.kind != "fold" && opts.kind != "constant" && opts.kind != "auto")
        throw StructuralError("generate: kind must be fold, constant, or auto");
    inst = fold ? gen::fold_homotopy_instance(rng, opts.max_sets, opts.max_points, opts.truncation)
                : gen::constant_homotopy_instance(rng, opts.max_sets, opts.max_points, opts.truncation);

    std::vector<TwistedPtr> objects;
    std::optional<TwistedMorphism> gauge_weq;  // a ready-made weak equivalence E0 -> E1
    {
        int min_deg = static_cast<int>(rng.range(-1, 1));
        gen::ComplexShape shape =
            gen::random_complex_shape(rng, ring, min_deg, opts.amplitude, opts.max_rank);
        TwistedPtr base = gen::pullback_type_twisted(inst.target, ring, shape);
        CechElement g0 = gen::random_gauge_element(rng, base->sheaf, std::max(1, opts.amplitude));
        objects.push_back(make_twisted(base->sheaf, gauge_transform(g0, base->a)));
        if (opts.objects >= 2) {
            // a second gauge of the same base, linked by the closed isomorphism
            // g1 g0^{-1}: (E, a0) -> (E, a1)
            CechElement g1 = gen::random_gauge_element(rng, base->sheaf, std::max(1, opts.amplitude));
            objects.push_back(make_twisted(base->sheaf, gauge_transform(g1, base->a)));
            TwistedMorphism w{objects[0], objects[1], compose(g1, invert_graded(g0))};
            gauge_weq = std::move(w);
        }
    }
    for (int i = static_cast<int>(objects.size()); i < opts.objects; ++i) {
        int min_deg = static_cast<int>(rng.range(-1, 1));
        objects.push_back(gen::random_twisted(rng, inst.target, ring, min_deg, opts.amplitude,
                                              opts.max_rank, std::max(1, opts.amplitude)));
    }
    // morphisms, retried a few times until the corpus witnesses the failure of
    // strict naturality (generically immediate)
    struct GenMor {
        int src, tgt;
        TwistedMorphism m;
    };
    std::vector<GenMor> best;
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::vector<GenMor> cur;
        bool witness = false;
        for (int i = 0; i < opts.morphisms; ++i) {
            int si = static_cast<int>(rng.below(objects.size()));
            int ti = static_cast<int>(rng.below(objects.size()));
            int deg = static_cast<int>(rng.range(-1, 0));
            TwistedMorphism m = gen::random_morphism(rng, objects[si], objects[ti], deg, 40);
            if (rng.below(3) == 0) m = morphism_diff(m);
            if (!naturality_defect(inst.h, m).is_zero()) witness = true;
            cur.push_back({si, ti, std::move(m)});
        }
        if (witness || opts.morphisms == 0 || attempt == 7) {
            best = std::move(cur);
            break;
        }
    }

    InstanceBundle b;
    b.ring = ring;
    b.spaces["X"] = inst.target;
    InstanceBundle::NamedMap f{"X", "X", inst.h.f};
    InstanceBundle::NamedMap g{"X", "X", inst.h.g};
    b.maps["f"] = std::move(f);
    b.maps["g"] = std::move(g);
    b.homotopies["h"] = InstanceBundle::NamedHomotopy{"f", "g", inst.h};
    InstanceBundle::NamedProbe probe;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        std::string name = "E" + std::to_string(i);
        b.twisted[name] = InstanceBundle::NamedTwisted{"X", objects[i]};
        probe.objects.push_back(name);
    }
    for (std::size_t i = 0; i < best.size(); ++i) {
        std::string name = "u" + std::to_string(i);
        b.morphisms[name] = InstanceBundle::NamedMorphism{
            "E" + std::to_string(best[i].src), "E" + std::to_string(best[i].tgt), best[i].m};
        probe.morphisms.push_back(name);
    }
    // closed degree-0 material for the ho-invert command
    b.morphisms["id_E0"] = InstanceBundle::NamedMorphism{"E0", "E0", identity_morphism(objects[0])};
    probe.morphisms.push_back("id_E0");
    if (gauge_weq) {
        b.morphisms["w01"] = InstanceBundle::NamedMorphism{"E0", "E1", *gauge_weq};
        probe.morphisms.push_back("w01");
    }
    b.probes["main"] = std::move(probe);

    ValidationReport check = cmd_validate(b);
    if (!check.all_pass())
        throw InvariantViolation("generate: self-check failed\n" + check.summary());
    return b;
}

HoInvertResult cmd_ho_invert(const InstanceBundle& b, const std::string& morphism) {
    auto mit = b.morphisms.find(morphism);
    if (mit == b.morphisms.end())
        throw StructuralError("ho-invert: no morphism named \"" + morphism + "\"");
    const TwistedMorphism& m = mit->second.m;
    if (m.degree() != 0) throw StructuralError("ho-invert: morphism must have degree 0");
    if (!morphism_diff(m).is_zero()) throw StructuralError("ho-invert: morphism must be closed");

    HoInvertResult out;
    bool weq = is_weak_equivalence(m);
    auto w = ho_invert(m);
    out.feasible = w.has_value();
    auto& feas = out.report.family(std::string("homotopy-inverse ") +
                                   (out.feasible ? "(found)" : "(infeasible)"));
    feas.informative = true;
    feas.instances = 1;
    if (w) {
        // residuals re-checked exactly
        auto& res = out.report.family("witness-residuals");
        res.instances = 3;
        if (!morphism_diff(w->psi).is_zero()) {
            res.pass = false;
            res.violations.push_back("d(psi) != 0");
        }
        TwistedMorphism r1 = morphism_sub(morphism_compose(w->psi, m), identity_morphism(m.source));
        if (!(r1.el == morphism_diff(w->eta).el)) {
            res.pass = false;
            res.violations.push_back("psi phi - id != d(eta)");
        }
        TwistedMorphism r2 = morphism_sub(morphism_compose(m, w->psi), identity_morphism(m.target));
        if (!(r2.el == morphism_diff(w->omega).el)) {
            res.pass = false;
            res.violations.push_back("phi psi - id != d(omega)");
        }
        json wj;
        wj["psi"] = json::parse(morphism_components_json(w->psi));
        wj["eta"] = json::parse(morphism_components_json(w->eta));
        wj["omega"] = json::parse(morphism_components_json(w->omega));
        out.witness_json = wj.dump(2) + "\n";
    }
    auto& agree = out.report.family("agreement-with-weak-equivalence");
    agree.instances = 1;
    if (weq != out.feasible) {
        agree.pass = false;
        agree.violations.push_back(std::string("is_weak_equivalence = ") + (weq ? "true" : "false") +
                                   " but inverse " + (out.feasible ? "found" : "infeasible"));
    }
    return out;
}

ValidationReport cmd_selftest(std::uint64_t seed) {
    ValidationReport rep;
    int idx = 0;
    for (const char* ring : {"Q", "F101"}) {
        for (const char* kind : {"fold", "constant"}) {
            GenerateOptions opts;
            opts.seed = seed + idx++;
            opts.ring = ring;
            opts.kind = kind;
            opts.max_sets = kind == std::string("fold") ? 1 : 2;
            InstanceBundle b = cmd_generate(opts);
            std::string tag = std::string(ring) + "/" + kind;
            rep.merge(cmd_validate(b), tag);
            PhiResult pr = cmd_phi(b, "h", "main");
            rep.merge(pr.report, tag + "/phi");
            // round-trip canonicality
            rep.count(tag + "/serialization-idempotent");
            std::string s1 = serialize_bundle(b);
            std::string s2 = serialize_bundle(parse_bundle(s1));
            if (s1 != s2) rep.violation(tag + "/serialization-idempotent", "round trip differs");
        }
    }
    return rep;
}

}  // namespace twc::cli
