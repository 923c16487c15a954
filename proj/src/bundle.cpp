#include "twc/bundle.hpp"

#include <algorithm>

#include <json.hpp>

#include "twc/errors.hpp"
#include "twc/version.hpp"

namespace twc {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormat = "twc-bundle/1";

[[noreturn]] void bad(const std::string& path, const std::string& what) {
    throw StructuralError("bundle: " + path + ": " + what);
}

const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) bad(path, std::string("missing field \"") + key + "\"");
    return *it;
}

int int_field(const json& j, const std::string& path, const char* key) {
    const json& v = field(j, path, key);
    if (!v.is_number_integer()) bad(path + "." + key, "expected an integer");
    return v.get<int>();
}

std::vector<std::vector<int>> index_table(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of index arrays");
    std::vector<std::vector<int>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& row = j[i];
        if (!row.is_array()) bad(path + "[" + std::to_string(i) + "]", "expected an index array");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) bad(path + "[" + std::to_string(i) + "]", "expected integers");
            r.push_back(v.get<int>());
        }
        out.push_back(std::move(r));
    }
    return out;
}

// ---- matrices and elements -----------------------------------------------------

json matrix_to_json(const BaseRing& ring, const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(ring.scalar_str(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const BaseRing& ring, const json& j, int rows, int cols,
                        const std::string& path) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        bad(path, "expected " + std::to_string(rows) + " matrix rows");
    Matrix m(ring, rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            bad(path, "expected " + std::to_string(cols) + " entries in row " + std::to_string(i));
        for (int c = 0; c < cols; ++c) {
            if (!row[c].is_string()) bad(path, "scalar entries are strings");
            try {
                m.set(i, c, ring.parse_scalar(row[c].get<std::string>()));
            } catch (const StructuralError& e) {
                bad(path, e.what());
            }
        }
    }
    return m;
}

json element_to_json(const CechElement& el) {
    const BaseRing& ring = el.ring();
    json pieces = json::array();
    int last_p = -1;
    json* cur = nullptr;
    for (const auto& [k, m] : el.comps()) {
        if (k.p != last_p) {
            json piece;
            piece["p"] = k.p;
            piece["q"] = el.degree() - k.p;
            piece["entries"] = json::array();
            pieces.push_back(std::move(piece));
            cur = &pieces.back();
            last_p = k.p;
        }
        json entry;
        entry["simplex"] = k.x;
        entry["degree"] = k.n;
        entry["matrix"] = matrix_to_json(ring, m);
        (*cur)["entries"].push_back(std::move(entry));
    }
    return pieces;
}

void element_from_json(CechElement& el, const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of homogeneous pieces");
    const SimplicialSpace& sp = *el.space();
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string ppath = path + "[" + std::to_string(i) + "]";
        int p = int_field(j[i], ppath, "p");
        int q = int_field(j[i], ppath, "q");
        if (p < 0 || p > sp.truncation) bad(ppath, "piece level outside the truncation window");
        if (p + q != el.degree()) bad(ppath, "piece bidegree does not match the element degree");
        const json& entries = field(j[i], ppath, "entries");
        if (!entries.is_array()) bad(ppath, "entries must be an array");
        for (std::size_t e = 0; e < entries.size(); ++e) {
            std::string epath = ppath + ".entries[" + std::to_string(e) + "]";
            int x = int_field(entries[e], epath, "simplex");
            int n = int_field(entries[e], epath, "degree");
            if (x < 0 || x >= sp.level_size(p)) bad(epath, "simplex index out of range");
            int rows = el.tgt_dim(p, x, n), cols = el.src_dim(p, x, n);
            el.set(p, x, n,
                   matrix_from_json(el.ring(), field(entries[e], epath, "matrix"), rows, cols, epath));
        }
    }
}

// ---- spaces, maps, homotopies ----------------------------------------------------

json space_to_json(const SimplicialSpace& s) {
    json j;
    j["truncation"] = s.truncation;
    j["levels"] = s.ids;
    json faces = json::array();
    for (int n = 1; n <= s.truncation; ++n) faces.push_back(s.faces[n]);
    j["faces"] = std::move(faces);
    json degen = json::array();
    for (int n = 0; n < s.truncation; ++n) degen.push_back(s.degen[n]);
    j["degeneracies"] = std::move(degen);
    return j;
}

SpacePtr space_from_json(const json& j, const std::string& path) {
    // a space can be given as a cover: {"truncation": N, "cover":
    // {"points": [...], "sets": {"A": ["p0", ...], ...}}}
    if (j.contains("cover")) {
        int N = int_field(j, path, "truncation");
        const json& cov = j["cover"];
        CoverSpec cs;
        for (const auto& p : field(cov, path + ".cover", "points")) {
            if (!p.is_string()) bad(path + ".cover.points", "points are strings");
            cs.points.push_back(p.get<std::string>());
        }
        const json& sets = field(cov, path + ".cover", "sets");
        if (!sets.is_object()) bad(path + ".cover.sets", "sets is a name -> points object");
        for (auto it = sets.begin(); it != sets.end(); ++it) {
            std::uint64_t mask = 0;
            for (const auto& p : it.value()) {
                auto pos = std::find(cs.points.begin(), cs.points.end(), p.get<std::string>());
                if (pos == cs.points.end())
                    bad(path + ".cover.sets." + it.key(), "unknown point \"" + p.get<std::string>() + "\"");
                mask |= 1ull << (pos - cs.points.begin());
            }
            cs.set_names.push_back(it.key());
            cs.set_masks.push_back(mask);
        }
        try {
            return nerve(cs, N);
        } catch (const StructuralError& e) {
            bad(path + ".cover", e.what());
        }
    }
    auto s = std::make_shared<SimplicialSpace>();
    s->truncation = int_field(j, path, "truncation");
    if (s->truncation < 0) bad(path, "negative truncation");
    const json& levels = field(j, path, "levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != s->truncation + 1)
        bad(path + ".levels", "expected truncation+1 level arrays");
    s->ids.resize(s->truncation + 1);
    for (int n = 0; n <= s->truncation; ++n) {
        for (const auto& v : levels[n]) {
            if (!v.is_string()) bad(path + ".levels", "ids are strings");
            s->ids[n].push_back(v.get<std::string>());
        }
    }
    const json& faces = field(j, path, "faces");
    if (!faces.is_array() || static_cast<int>(faces.size()) != s->truncation)
        bad(path + ".faces", "expected one face table per level 1..N");
    s->faces.resize(s->truncation + 1);
    for (int n = 1; n <= s->truncation; ++n)
        s->faces[n] = index_table(faces[n - 1], path + ".faces[" + std::to_string(n - 1) + "]");
    const json& degen = field(j, path, "degeneracies");
    if (!degen.is_array() || static_cast<int>(degen.size()) != s->truncation)
        bad(path + ".degeneracies", "expected one degeneracy table per level 0..N-1");
    s->degen.resize(s->truncation + 1);
    for (int n = 0; n < s->truncation; ++n)
        s->degen[n] = index_table(degen[n], path + ".degeneracies[" + std::to_string(n) + "]");
    try {
        s->check_structure();
    } catch (const StructuralError& e) {
        bad(path, e.what());
    }
    return s;
}

json sheaf_to_json(const GradedSheaf& sh) {
    json pts = json::array();
    for (const auto& m : sh.at) {
        json degrees;
        for (auto& [n, r] : m.dims) {
            if (r > 0) degrees[std::to_string(n)] = r;
        }
        pts.push_back(std::move(degrees));
    }
    return pts;
}

SheafPtr sheaf_from_json(const json& j, const SpacePtr& sp, const BaseRing& ring,
                         const std::string& path) {
    auto sh = std::make_shared<GradedSheaf>();
    sh->base = sp;
    sh->ring = ring;
    if (!j.is_array() || static_cast<int>(j.size()) != sp->level_size(0))
        bad(path, "expected one module per point of the 0th level");
    sh->at.resize(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_object()) bad(path, "modules are degree->rank objects");
        for (auto it = j[i].begin(); it != j[i].end(); ++it) {
            int deg = 0;
            try {
                deg = std::stoi(it.key());
            } catch (...) {
                bad(path, "module keys are integer degrees");
            }
            if (!it.value().is_number_integer() || it.value().get<int>() < 0)
                bad(path, "ranks are non-negative integers");
            int r = it.value().get<int>();
            if (r > 0) sh->at[i].dims[deg] = r;
        }
    }
    return sh;
}

}  // namespace

ProbeSet InstanceBundle::probe(const std::string& name) const {
    auto it = probes.find(name);
    if (it == probes.end()) throw StructuralError("bundle: no probe named \"" + name + "\"");
    ProbeSet out;
    for (const auto& o : it->second.objects) {
        auto t = twisted.find(o);
        if (t == twisted.end()) throw StructuralError("bundle: probe references unknown object \"" + o + "\"");
        out.objects.push_back(t->second.t);
    }
    for (const auto& m : it->second.morphisms) {
        auto t = morphisms.find(m);
        if (t == morphisms.end())
            throw StructuralError("bundle: probe references unknown morphism \"" + m + "\"");
        out.morphisms.push_back(t->second.m);
    }
    return out;
}

InstanceBundle parse_bundle_checked(const json& j);

std::string serialize_bundle(const InstanceBundle& b) {
    json j;
    j["format"] = kFormat;
    if (b.ring.kind() == RingKind::Rationals) {
        j["ring"] = {{"kind", "Q"}};
    } else {
        j["ring"] = {{"kind", "Fp"}, {"p", b.ring.p()}};
    }
    json spaces;
    for (const auto& [name, sp] : b.spaces) spaces[name] = space_to_json(*sp);
    j["spaces"] = std::move(spaces);
    json maps;
    for (const auto& [name, nm] : b.maps) {
        json m;
        m["source"] = nm.source;
        m["target"] = nm.target;
        m["components"] = nm.map.comp;
        maps[name] = std::move(m);
    }
    j["maps"] = std::move(maps);
    json homs;
    for (const auto& [name, nh] : b.homotopies) {
        json m;
        m["f"] = nh.f;
        m["g"] = nh.g;
        m["components"] = nh.h.h;
        homs[name] = std::move(m);
    }
    j["homotopies"] = std::move(homs);
    json tws;
    for (const auto& [name, nt] : b.twisted) {
        json m;
        m["space"] = nt.space;
        m["sheaf"] = sheaf_to_json(*nt.t->sheaf);
        m["a"] = element_to_json(nt.t->a);
        tws[name] = std::move(m);
    }
    j["twisted"] = std::move(tws);
    json mors;
    for (const auto& [name, nm] : b.morphisms) {
        json m;
        m["source"] = nm.source;
        m["target"] = nm.target;
        m["degree"] = nm.m.degree();
        m["element"] = element_to_json(nm.m.el);
        mors[name] = std::move(m);
    }
    j["morphisms"] = std::move(mors);
    json probes;
    for (const auto& [name, np] : b.probes) {
        json m;
        m["objects"] = np.objects;
        m["morphisms"] = np.morphisms;
        probes[name] = std::move(m);
    }
    j["probes"] = std::move(probes);
    return j.dump(2) + "\n";
}

InstanceBundle parse_bundle(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw StructuralError(std::string("bundle: JSON parse error: ") + e.what());
    }
    try {
        return parse_bundle_checked(j);
    } catch (const json::exception& e) {
        // wrong JSON types surface as located structural errors, never escapes
        throw StructuralError(std::string("bundle: malformed value: ") + e.what());
    }
}

InstanceBundle parse_bundle_checked(const json& j) {
    if (!j.is_object()) bad("$", "bundle must be an object");
    if (field(j, "$", "format").get<std::string>() != kFormat)
        bad("$.format", "unsupported format (expected " + std::string(kFormat) + ")");
    InstanceBundle b;
    const json& ring = field(j, "$", "ring");
    std::string kind = field(ring, "$.ring", "kind").get<std::string>();
    if (kind == "Q") {
        b.ring = BaseRing::rationals();
    } else if (kind == "Fp") {
        b.ring = BaseRing::prime_field(field(ring, "$.ring", "p").get<std::uint64_t>());
    } else {
        bad("$.ring.kind", "expected \"Q\" or \"Fp\"");
    }
    if (j.contains("spaces")) {
        for (auto it = j["spaces"].begin(); it != j["spaces"].end(); ++it)
            b.spaces[it.key()] = space_from_json(it.value(), "$.spaces." + it.key());
    }
    auto want_space = [&](const std::string& name, const std::string& path) -> SpacePtr {
        auto it = b.spaces.find(name);
        if (it == b.spaces.end()) bad(path, "unknown space \"" + name + "\"");
        return it->second;
    };
    if (j.contains("maps")) {
        for (auto it = j["maps"].begin(); it != j["maps"].end(); ++it) {
            std::string path = "$.maps." + it.key();
            InstanceBundle::NamedMap nm;
            nm.source = field(it.value(), path, "source").get<std::string>();
            nm.target = field(it.value(), path, "target").get<std::string>();
            nm.map.source = want_space(nm.source, path + ".source");
            nm.map.target = want_space(nm.target, path + ".target");
            nm.map.comp = index_table(field(it.value(), path, "components"), path + ".components");
            auto structural = [&]() {
                ValidationReport rep = validate_map(nm.map);
                (void)rep;  // shape throws handled below; identity checks belong to validate
            };
            try {
                structural();
            } catch (const StructuralError& e) {
                bad(path, e.what());
            }
            b.maps[it.key()] = std::move(nm);
        }
    }
    if (j.contains("homotopies")) {
        for (auto it = j["homotopies"].begin(); it != j["homotopies"].end(); ++it) {
            std::string path = "$.homotopies." + it.key();
            InstanceBundle::NamedHomotopy nh;
            nh.f = field(it.value(), path, "f").get<std::string>();
            nh.g = field(it.value(), path, "g").get<std::string>();
            auto fit = b.maps.find(nh.f);
            auto git = b.maps.find(nh.g);
            if (fit == b.maps.end()) bad(path + ".f", "unknown map \"" + nh.f + "\"");
            if (git == b.maps.end()) bad(path + ".g", "unknown map \"" + nh.g + "\"");
            nh.h.f = fit->second.map;
            nh.h.g = git->second.map;
            const json& comp = field(it.value(), path, "components");
            if (!comp.is_array()) bad(path + ".components", "expected per-level arrays");
            for (std::size_t p = 0; p < comp.size(); ++p)
                nh.h.h.push_back(index_table(comp[p], path + ".components[" + std::to_string(p) + "]"));
            b.homotopies[it.key()] = std::move(nh);
        }
    }
    if (j.contains("twisted")) {
        for (auto it = j["twisted"].begin(); it != j["twisted"].end(); ++it) {
            std::string path = "$.twisted." + it.key();
            InstanceBundle::NamedTwisted nt;
            nt.space = field(it.value(), path, "space").get<std::string>();
            SpacePtr sp = want_space(nt.space, path + ".space");
            SheafPtr sheaf = sheaf_from_json(field(it.value(), path, "sheaf"), sp, b.ring, path + ".sheaf");
            CechElement a(sheaf, sheaf, 1);
            try {
                element_from_json(a, field(it.value(), path, "a"), path + ".a");
                nt.t = make_twisted(sheaf, std::move(a));
            } catch (const StructuralError& e) {
                bad(path, e.what());
            }
            b.twisted[it.key()] = std::move(nt);
        }
    }
    if (j.contains("morphisms")) {
        for (auto it = j["morphisms"].begin(); it != j["morphisms"].end(); ++it) {
            std::string path = "$.morphisms." + it.key();
            InstanceBundle::NamedMorphism nm;
            nm.source = field(it.value(), path, "source").get<std::string>();
            nm.target = field(it.value(), path, "target").get<std::string>();
            auto sit = b.twisted.find(nm.source);
            auto tit = b.twisted.find(nm.target);
            if (sit == b.twisted.end()) bad(path + ".source", "unknown object \"" + nm.source + "\"");
            if (tit == b.twisted.end()) bad(path + ".target", "unknown object \"" + nm.target + "\"");
            int degree = int_field(it.value(), path, "degree");
            nm.m = zero_morphism(sit->second.t, tit->second.t, degree);
            try {
                element_from_json(nm.m.el, field(it.value(), path, "element"), path + ".element");
            } catch (const StructuralError& e) {
                bad(path, e.what());
            }
            b.morphisms[it.key()] = std::move(nm);
        }
    }
    if (j.contains("probes")) {
        for (auto it = j["probes"].begin(); it != j["probes"].end(); ++it) {
            std::string path = "$.probes." + it.key();
            InstanceBundle::NamedProbe np;
            for (const auto& v : field(it.value(), path, "objects")) np.objects.push_back(v.get<std::string>());
            for (const auto& v : field(it.value(), path, "morphisms"))
                np.morphisms.push_back(v.get<std::string>());
            b.probes[it.key()] = std::move(np);
        }
    }
    // reference integrity of probes
    for (const auto& [name, np] : b.probes) {
        for (const auto& o : np.objects) {
            if (!b.twisted.count(o)) bad("$.probes." + name, "unknown object \"" + o + "\"");
        }
        for (const auto& m : np.morphisms) {
            if (!b.morphisms.count(m)) bad("$.probes." + name, "unknown morphism \"" + m + "\"");
        }
    }
    return b;
}

std::string report_json(const ValidationReport& rep, const std::string& command,
                        std::optional<std::uint64_t> seed, std::optional<double> wall_ms) {
    json j;
    j["tool"] = std::string("twc ") + kVersion;
    j["command"] = command;
    if (seed) j["seed"] = *seed;
    json checks = json::array();
    for (const auto& it : rep.items) {
        json c;
        c["name"] = it.name;
        c["status"] = it.pass ? "pass" : "fail";
        if (it.informative) c["informative"] = true;
        c["instances"] = it.instances;
        c["violations"] = it.violations;
        checks.push_back(std::move(c));
    }
    j["checks"] = std::move(checks);
    j["pass"] = rep.all_pass();
    if (wall_ms) j["wall_ms"] = *wall_ms;
    return j.dump(2) + "\n";
}

std::string report_text(const ValidationReport& rep, const std::string& command) {
    std::string out = "== " + command + " ==\n" + rep.summary();
    out += rep.all_pass() ? "RESULT: pass\n" : "RESULT: FAIL\n";
    return out;
}

std::string morphism_components_json(const TwistedMorphism& m) {
    json j;
    j["degree"] = m.degree();
    j["element"] = element_to_json(m.el);
    return j.dump(2) + "\n";
}

}  // namespace twc
