#include "twc/simplicial.hpp"

#include <map>

#include "twc/errors.hpp"

namespace twc {

int SimplicialSpace::front(int k, int p, int x) const {
    if (k < p) throw StructuralError("front face: k < p");
    for (int n = k; n > p; --n) x = face(n, n, x);  // innermost first: del_k, del_{k-1}, ...
    return x;
}

int SimplicialSpace::back(int k, int p, int x) const {
    if (k < p) throw StructuralError("back face: k < p");
    for (int n = k; n > p; --n) x = face(n, 0, x);
    return x;
}

void SimplicialSpace::check_structure() const {
    const int N = truncation;
    if (static_cast<int>(ids.size()) != N + 1) throw StructuralError("space: ids levels != N+1");
    if (static_cast<int>(faces.size()) != N + 1) throw StructuralError("space: faces levels != N+1");
    if (static_cast<int>(degen.size()) != N + 1) throw StructuralError("space: degen levels != N+1");
    for (int n = 1; n <= N; ++n) {
        if (static_cast<int>(faces[n].size()) != n + 1)
            throw StructuralError("space: level " + std::to_string(n) + " needs n+1 face maps");
        for (int i = 0; i <= n; ++i) {
            if (static_cast<int>(faces[n][i].size()) != level_size(n))
                throw StructuralError("space: face table size mismatch");
            for (int x : faces[n][i]) {
                if (x < 0 || x >= level_size(n - 1)) throw StructuralError("space: face index out of range");
            }
        }
    }
    for (int n = 0; n < N; ++n) {
        if (static_cast<int>(degen[n].size()) != n + 1)
            throw StructuralError("space: level " + std::to_string(n) + " needs n+1 degeneracy maps");
        for (int i = 0; i <= n; ++i) {
            if (static_cast<int>(degen[n][i].size()) != level_size(n))
                throw StructuralError("space: degeneracy table size mismatch");
            for (int x : degen[n][i]) {
                if (x < 0 || x >= level_size(n + 1)) throw StructuralError("space: degeneracy index out of range");
            }
        }
    }
}

SimplicialMap SimplicialMap::identity(SpacePtr s) {
    SimplicialMap f;
    f.source = s;
    f.target = s;
    f.comp.resize(s->truncation + 1);
    for (int n = 0; n <= s->truncation; ++n) {
        f.comp[n].resize(s->level_size(n));
        for (int x = 0; x < s->level_size(n); ++x) f.comp[n][x] = x;
    }
    return f;
}

SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f) {
    if (!(*f.target == *g.source)) throw StructuralError("compose_maps: middle space mismatch");
    SimplicialMap out;
    out.source = f.source;
    out.target = g.target;
    out.comp.resize(f.comp.size());
    for (std::size_t n = 0; n < f.comp.size(); ++n) {
        out.comp[n].resize(f.comp[n].size());
        for (std::size_t x = 0; x < f.comp[n].size(); ++x)
            out.comp[n][x] = g.comp[n][f.comp[n][x]];
    }
    return out;
}

void CoverSpec::check() const {
    if (set_names.empty()) throw StructuralError("cover: no sets");
    if (points.empty()) throw StructuralError("cover: empty ground set");
    if (points.size() > 64) throw StructuralError("cover: more than 64 points");
    if (set_names.size() != set_masks.size()) throw StructuralError("cover: name/mask size mismatch");
    std::uint64_t all = points.size() == 64 ? ~0ull : ((1ull << points.size()) - 1);
    std::uint64_t got = 0;
    for (auto m : set_masks) got |= m;
    if ((got & all) != all) throw StructuralError("cover: sets do not cover the ground set");
}

SpacePtr nerve(const CoverSpec& cover, int truncation) {
    cover.check();
    if (truncation < 0) throw StructuralError("nerve: negative truncation");
    const int S = static_cast<int>(cover.set_names.size());
    auto sp = std::make_shared<SimplicialSpace>();
    sp->truncation = truncation;
    sp->ids.resize(truncation + 1);
    sp->faces.resize(truncation + 1);
    sp->degen.resize(truncation + 1);

    // tuples per level, with their intersection masks
    std::vector<std::vector<std::vector<int>>> tuples(truncation + 1);
    std::vector<std::map<std::vector<int>, int>> index(truncation + 1);
    std::vector<std::vector<std::uint64_t>> masks(truncation + 1);

    for (int i = 0; i < S; ++i) {
        if (cover.set_masks[i] == 0) continue;  // empty member never appears in a simplex
        std::vector<int> t{i};
        index[0][t] = static_cast<int>(tuples[0].size());
        tuples[0].push_back(t);
        masks[0].push_back(cover.set_masks[i]);
    }
    for (int n = 1; n <= truncation; ++n) {
        for (std::size_t x = 0; x < tuples[n - 1].size(); ++x) {
            for (int j = 0; j < S; ++j) {
                std::uint64_t m = masks[n - 1][x] & cover.set_masks[j];
                if (!m) continue;
                std::vector<int> t = tuples[n - 1][x];
                t.push_back(j);
                index[n][t] = static_cast<int>(tuples[n].size());
                tuples[n].push_back(std::move(t));
                masks[n].push_back(m);
            }
        }
    }
    for (int n = 0; n <= truncation; ++n) {
        sp->ids[n].reserve(tuples[n].size());
        for (auto& t : tuples[n]) {
            std::string id;
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (k) id += ",";
                id += cover.set_names[t[k]];
            }
            sp->ids[n].push_back(std::move(id));
        }
    }
    for (int n = 1; n <= truncation; ++n) {
        sp->faces[n].assign(n + 1, std::vector<int>(tuples[n].size()));
        for (int i = 0; i <= n; ++i) {
            for (std::size_t x = 0; x < tuples[n].size(); ++x) {
                std::vector<int> t = tuples[n][x];
                t.erase(t.begin() + i);
                sp->faces[n][i][x] = index[n - 1].at(t);  // superset intersection is nonempty
            }
        }
    }
    for (int n = 0; n < truncation; ++n) {
        sp->degen[n].assign(n + 1, std::vector<int>(tuples[n].size()));
        for (int i = 0; i <= n; ++i) {
            for (std::size_t x = 0; x < tuples[n].size(); ++x) {
                std::vector<int> t = tuples[n][x];
                t.insert(t.begin() + i, t[i]);
                sp->degen[n][i][x] = index[n + 1].at(t);
            }
        }
    }
    sp->check_structure();
    return sp;
}

namespace {

std::string locate(const SimplicialSpace& s, int n, int x) {
    return "level " + std::to_string(n) + " element " + s.ids[n][x];
}

}  // namespace

ValidationReport validate_simplicial(const SimplicialSpace& s) {
    s.check_structure();
    ValidationReport rep;
    const int N = s.truncation;
    // del_i del_j = del_{j-1} del_i  (i < j)
    for (int n = 2; n <= N; ++n) {
        for (int j = 1; j <= n; ++j) {
            for (int i = 0; i < j; ++i) {
                for (int x = 0; x < s.level_size(n); ++x) {
                    rep.count("face-face");
                    if (s.face(n - 1, i, s.face(n, j, x)) != s.face(n - 1, j - 1, s.face(n, i, x)))
                        rep.violation("face-face", "d" + std::to_string(i) + " d" + std::to_string(j) +
                                                       " != d" + std::to_string(j - 1) + " d" +
                                                       std::to_string(i) + " at " + locate(s, n, x));
                }
            }
        }
    }
    // del_i s_j at levels where s_j is defined
    for (int n = 0; n < N; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= n + 1; ++i) {
                for (int x = 0; x < s.level_size(n); ++x) {
                    int lhs = s.face(n + 1, i, s.degeneracy(n, j, x));
                    if (i < j) {
                        rep.count("face-degeneracy-below");
                        if (n < 1) continue;
                        if (lhs != s.degeneracy(n - 1, j - 1, s.face(n, i, x)))
                            rep.violation("face-degeneracy-below",
                                          "d" + std::to_string(i) + " s" + std::to_string(j) + " at " +
                                              locate(s, n, x));
                    } else if (i == j || i == j + 1) {
                        rep.count("face-degeneracy-identity");
                        if (lhs != x)
                            rep.violation("face-degeneracy-identity",
                                          "d" + std::to_string(i) + " s" + std::to_string(j) + " != id at " +
                                              locate(s, n, x));
                    } else {  // i > j + 1
                        rep.count("face-degeneracy-above");
                        if (lhs != s.degeneracy(n - 1, j, s.face(n, i - 1, x)))
                            rep.violation("face-degeneracy-above",
                                          "d" + std::to_string(i) + " s" + std::to_string(j) + " at " +
                                              locate(s, n, x));
                    }
                }
            }
        }
    }
    // s_i s_j = s_{j+1} s_i (i <= j)
    for (int n = 0; n + 1 < N; ++n) {
        for (int j = 0; j <= n; ++j) {
            for (int i = 0; i <= j; ++i) {
                for (int x = 0; x < s.level_size(n); ++x) {
                    rep.count("degeneracy-degeneracy");
                    if (s.degeneracy(n + 1, i, s.degeneracy(n, j, x)) !=
                        s.degeneracy(n + 1, j + 1, s.degeneracy(n, i, x)))
                        rep.violation("degeneracy-degeneracy",
                                      "s" + std::to_string(i) + " s" + std::to_string(j) + " at " +
                                          locate(s, n, x));
                }
            }
        }
    }
    return rep;
}

ValidationReport validate_map(const SimplicialMap& f) {
    ValidationReport rep;
    const SimplicialSpace& U = *f.source;
    const SimplicialSpace& V = *f.target;
    if (U.truncation != V.truncation) throw StructuralError("map: truncation mismatch");
    if (static_cast<int>(f.comp.size()) != U.truncation + 1) throw StructuralError("map: level count");
    for (int n = 0; n <= U.truncation; ++n) {
        if (static_cast<int>(f.comp[n].size()) != U.level_size(n))
            throw StructuralError("map: component size at level " + std::to_string(n));
        for (int v : f.comp[n]) {
            if (v < 0 || v >= V.level_size(n)) throw StructuralError("map: component out of range");
        }
    }
    for (int n = 1; n <= U.truncation; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (int x = 0; x < U.level_size(n); ++x) {
                rep.count("map-face");
                if (f.at(n - 1, U.face(n, i, x)) != V.face(n, i, f.at(n, x)))
                    rep.violation("map-face", "f d" + std::to_string(i) + " at " + locate(U, n, x));
            }
        }
    }
    for (int n = 0; n < U.truncation; ++n) {
        for (int i = 0; i <= n; ++i) {
            for (int x = 0; x < U.level_size(n); ++x) {
                rep.count("map-degeneracy");
                if (f.at(n + 1, U.degeneracy(n, i, x)) != V.degeneracy(n, i, f.at(n, x)))
                    rep.violation("map-degeneracy", "f s" + std::to_string(i) + " at " + locate(U, n, x));
            }
        }
    }
    return rep;
}

std::vector<int> front_face(const SimplicialSpace& s, int k, int p) {
    if (k < p || k > s.truncation) throw StructuralError("front_face: bad (k, p)");
    std::vector<int> out(s.level_size(k));
    for (int x = 0; x < s.level_size(k); ++x) out[x] = s.front(k, p, x);
    return out;
}

std::vector<int> back_face(const SimplicialSpace& s, int k, int p) {
    if (k < p || k > s.truncation) throw StructuralError("back_face: bad (k, p)");
    std::vector<int> out(s.level_size(k));
    for (int x = 0; x < s.level_size(k); ++x) out[x] = s.back(k, p, x);
    return out;
}

ValidationReport validate_face_composites(const SimplicialSpace& s) {
    ValidationReport rep;
    const int N = s.truncation;
    for (int k = 0; k <= N; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int r = 0; r <= p; ++r) {
                for (int x = 0; x < s.level_size(k); ++x) {
                    rep.count("front-front");
                    if (s.front(p, r, s.front(k, p, x)) != s.front(k, r, x))
                        rep.violation("front-front", "rho_{" + std::to_string(p) + "," + std::to_string(r) +
                                                         "} rho_{" + std::to_string(k) + "," +
                                                         std::to_string(p) + "} at " + locate(s, k, x));
                    rep.count("back-back");
                    if (s.back(p, r, s.back(k, p, x)) != s.back(k, r, x))
                        rep.violation("back-back", "tau composite at " + locate(s, k, x));
                    rep.count("front-back");
                    if (s.front(p, r, s.back(k, p, x)) !=
                        s.back(k + r - p, r, s.front(k, k + r - p, x)))
                        rep.violation("front-back", "rho tau exchange at " + locate(s, k, x));
                }
            }
        }
    }
    return rep;
}

ValidationReport validate_map_composites(const SimplicialMap& f) {
    ValidationReport rep;
    const SimplicialSpace& U = *f.source;
    const SimplicialSpace& V = *f.target;
    for (int k = 0; k <= U.truncation; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int x = 0; x < U.level_size(k); ++x) {
                rep.count("map-front");
                if (f.at(p, U.front(k, p, x)) != V.front(k, p, f.at(k, x)))
                    rep.violation("map-front", "f rho at " + locate(U, k, x));
                rep.count("map-back");
                if (f.at(p, U.back(k, p, x)) != V.back(k, p, f.at(k, x)))
                    rep.violation("map-back", "f tau at " + locate(U, k, x));
            }
        }
    }
    return rep;
}

// ---- cylinder ----------------------------------------------------------------

namespace {

// Delta^1 level-n elements are monotone [n] -> [1], encoded by leading-zero
// count j in 0..n+1. Faces drop a slot, degeneracies repeat one.
int d1_face(int i, int j) { return i < j ? j - 1 : j; }
int d1_degen(int i, int j) { return i < j ? j + 1 : j; }

}  // namespace

Cylinder cylinder(SpacePtr s) {
    const SimplicialSpace& S = *s;
    const int N = S.truncation;
    auto w = std::make_shared<SimplicialSpace>();
    w->truncation = N;
    w->ids.resize(N + 1);
    w->faces.resize(N + 1);
    w->degen.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        w->ids[n].reserve(static_cast<std::size_t>(S.level_size(n)) * (n + 2));
        for (int x = 0; x < S.level_size(n); ++x) {
            for (int j = 0; j <= n + 1; ++j) {
                w->ids[n].push_back(S.ids[n][x] + "|" + std::to_string(j));
            }
        }
    }
    for (int n = 1; n <= N; ++n) {
        w->faces[n].assign(n + 1, std::vector<int>(w->ids[n].size()));
        for (int i = 0; i <= n; ++i) {
            for (int x = 0; x < S.level_size(n); ++x) {
                for (int j = 0; j <= n + 1; ++j) {
                    int fx = S.face(n, i, x);
                    w->faces[n][i][x * (n + 2) + j] = fx * (n + 1) + d1_face(i, j);
                }
            }
        }
    }
    for (int n = 0; n < N; ++n) {
        w->degen[n].assign(n + 1, std::vector<int>(w->ids[n].size()));
        for (int i = 0; i <= n; ++i) {
            for (int x = 0; x < S.level_size(n); ++x) {
                for (int j = 0; j <= n + 1; ++j) {
                    int sx = S.degeneracy(n, i, x);
                    w->degen[n][i][x * (n + 2) + j] = sx * (n + 3) + d1_degen(i, j);
                }
            }
        }
    }
    w->check_structure();
    Cylinder out;
    out.base = s;
    out.space = w;
    out.eps0.source = s;
    out.eps0.target = w;
    out.eps1.source = s;
    out.eps1.target = w;
    out.eps0.comp.resize(N + 1);
    out.eps1.comp.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        out.eps0.comp[n].resize(S.level_size(n));
        out.eps1.comp[n].resize(S.level_size(n));
        for (int x = 0; x < S.level_size(n); ++x) {
            out.eps0.comp[n][x] = x * (n + 2) + (n + 1);  // constant 0: all slots zero
            out.eps1.comp[n][x] = x * (n + 2) + 0;        // constant 1: no zeros
        }
    }
    return out;
}

HomotopyExtraction homotopy_from_cylinder(const Cylinder& cyl, const SimplicialMap& H) {
    if (!(*H.source == *cyl.space))
        throw StructuralError("homotopy_from_cylinder: H is not defined on this cylinder");
    const SimplicialSpace& U = *cyl.base;
    const SimplicialSpace& V = *H.target;
    const int N = U.truncation;

    SimplicialHomotopy hom;
    hom.h.resize(N);  // p = 0 .. N-1
    for (int p = 0; p < N; ++p) {
        hom.h[p].assign(p + 1, std::vector<int>(U.level_size(p)));
        for (int i = 0; i <= p; ++i) {
            for (int x = 0; x < U.level_size(p); ++x) {
                // step element with zeros exactly on slots 0..i
                int sx = U.degeneracy(p, i, x);
                hom.h[p][i][x] = H.at(p + 1, cyl.pair_index(p + 1, sx, i + 1));
            }
        }
    }
    SimplicialMap He0 = compose_maps(H, cyl.eps0);
    SimplicialMap He1 = compose_maps(H, cyl.eps1);
    // observed endpoints: fhat = del_0 h_0, ghat = del_{p+1} h_p, read off at p = 0
    auto ends_match = [&](const SimplicialMap& cand_f, const SimplicialMap& cand_g) {
        for (int p = 0; p < N; ++p) {
            for (int x = 0; x < U.level_size(p); ++x) {
                if (V.face(p + 1, 0, hom.h[p][0][x]) != cand_f.at(p, x)) return false;
                if (V.face(p + 1, p + 1, hom.h[p][p][x]) != cand_g.at(p, x)) return false;
            }
        }
        return true;
    };
    std::string orientation;
    if (N > 0 && ends_match(He0, He1)) {
        orientation = "natural";
        hom.f = He0;
        hom.g = He1;
    } else if (N > 0 && ends_match(He1, He0)) {
        orientation = "mirrored";
        hom.f = He1;
        hom.g = He0;
    } else if (N == 0) {
        orientation = "trivial";  // no homotopy components below truncation 1
        hom.f = He0;
        hom.g = He1;
    } else {
        throw ConventionError("homotopy_from_cylinder: neither orientation matches the endpoints");
    }
    ValidationReport rep = validate_homotopy(hom);
    if (!rep.all_pass())
        throw ConventionError("homotopy_from_cylinder: extraction failed validation:\n" + rep.summary());
    HomotopyExtraction out;
    out.homotopy = std::move(hom);
    out.orientation = orientation;
    return out;
}

ValidationReport validate_homotopy(const SimplicialHomotopy& hom) {
    ValidationReport rep;
    const SimplicialMap& f = hom.f;
    const SimplicialMap& g = hom.g;
    if (!(*f.source == *g.source) || !(*f.target == *g.target))
        throw StructuralError("homotopy: f and g endpoints differ");
    const SimplicialSpace& U = *f.source;
    const SimplicialSpace& V = *f.target;
    const int N = U.truncation;
    if (static_cast<int>(hom.h.size()) != N) throw StructuralError("homotopy: needs N component levels");
    for (int p = 0; p < N; ++p) {
        if (static_cast<int>(hom.h[p].size()) != p + 1)
            throw StructuralError("homotopy: level " + std::to_string(p) + " needs p+1 components");
        for (int i = 0; i <= p; ++i) {
            if (static_cast<int>(hom.h[p][i].size()) != U.level_size(p))
                throw StructuralError("homotopy: component size mismatch");
            for (int y : hom.h[p][i]) {
                if (y < 0 || y >= V.level_size(p + 1))
                    throw StructuralError("homotopy: component out of range");
            }
        }
    }

    auto loc = [&](int p, int x) { return "level " + std::to_string(p) + " element " + U.ids[p][x]; };

    // clause (1): del_0 h_0 = f, del_{p+1} h_p = g
    for (int p = 0; p < N; ++p) {
        for (int x = 0; x < U.level_size(p); ++x) {
            rep.count("ends-f");
            if (V.face(p + 1, 0, hom.at(p, 0, x)) != f.at(p, x))
                rep.violation("ends-f", "d0 h0 != f at " + loc(p, x));
            rep.count("ends-g");
            if (V.face(p + 1, p + 1, hom.at(p, p, x)) != g.at(p, x))
                rep.violation("ends-g", "d(p+1) hp != g at " + loc(p, x));
        }
    }
    // clause (2): del_i h_j
    for (int p = 0; p < N; ++p) {
        for (int j = 0; j <= p; ++j) {
            for (int i = 0; i <= p + 1; ++i) {
                for (int x = 0; x < U.level_size(p); ++x) {
                    int lhs = V.face(p + 1, i, hom.at(p, j, x));
                    if (i < j) {
                        if (p == 0) continue;
                        rep.count("face-h-below");
                        if (lhs != hom.at(p - 1, j - 1, U.face(p, i, x)))
                            rep.violation("face-h-below", "d" + std::to_string(i) + " h" +
                                                              std::to_string(j) + " at " + loc(p, x));
                    } else if (i == j && i != 0) {
                        rep.count("face-h-equal");
                        if (lhs != V.face(p + 1, i, hom.at(p, i - 1, x)))
                            rep.violation("face-h-equal", "d" + std::to_string(i) + " h" +
                                                              std::to_string(j) + " at " + loc(p, x));
                    } else if (i > j + 1) {
                        if (p == 0) continue;
                        rep.count("face-h-above");
                        if (lhs != hom.at(p - 1, j, U.face(p, i - 1, x)))
                            rep.violation("face-h-above", "d" + std::to_string(i) + " h" +
                                                              std::to_string(j) + " at " + loc(p, x));
                    }
                }
            }
        }
    }
    // clause (3): s_i h_j
    for (int p = 0; p + 1 < N; ++p) {
        for (int j = 0; j <= p; ++j) {
            for (int i = 0; i <= p + 1; ++i) {
                for (int x = 0; x < U.level_size(p); ++x) {
                    int lhs = V.degeneracy(p + 1, i, hom.at(p, j, x));
                    if (i <= j) {
                        rep.count("degen-h-below");
                        if (lhs != hom.at(p + 1, j + 1, U.degeneracy(p, i, x)))
                            rep.violation("degen-h-below", "s" + std::to_string(i) + " h" +
                                                               std::to_string(j) + " at " + loc(p, x));
                    } else {
                        rep.count("degen-h-above");
                        if (lhs != hom.at(p + 1, j, U.degeneracy(p, i - 1, x)))
                            rep.violation("degen-h-above", "s" + std::to_string(i) + " h" +
                                                               std::to_string(j) + " at " + loc(p, x));
                    }
                }
            }
        }
    }
    // derived exchange: h_i del_j = del_{j+1} h_i (i < j) / del_j h_{i+1} (i >= j)
    for (int p = 1; p <= N - 1; ++p) {
        for (int j = 0; j <= p; ++j) {
            for (int i = 0; i <= p - 1; ++i) {
                for (int x = 0; x < U.level_size(p); ++x) {
                    int lhs = hom.at(p - 1, i, U.face(p, j, x));
                    rep.count("h-face");
                    int rhs = i < j ? V.face(p + 1, j + 1, hom.at(p, i, x))
                                    : V.face(p + 1, j, hom.at(p, i + 1, x));
                    if (lhs != rhs)
                        rep.violation("h-face", "h" + std::to_string(i) + " d" + std::to_string(j) +
                                                    " at " + loc(p, x));
                }
            }
        }
    }
    // derived exchange with back faces: h_i tau_{k,p} = tau_{k+1,p+1} h_{i+k-p}
    for (int k = 0; k <= N - 1; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int i = 0; i <= p; ++i) {
                for (int x = 0; x < U.level_size(k); ++x) {
                    rep.count("h-back");
                    if (hom.at(p, i, U.back(k, p, x)) != V.back(k + 1, p + 1, hom.at(k, i + k - p, x)))
                        rep.violation("h-back", "h" + std::to_string(i) + " tau_{" + std::to_string(k) +
                                                    "," + std::to_string(p) + "} at " + loc(k, x));
                }
            }
        }
    }
    // derived exchange with front faces: h_i rho_{k,p} = rho_{k+1,p+1} h_i
    for (int k = 0; k <= N - 1; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int i = 0; i <= p; ++i) {
                for (int x = 0; x < U.level_size(k); ++x) {
                    rep.count("h-front");
                    if (hom.at(p, i, U.front(k, p, x)) != V.front(k + 1, p + 1, hom.at(k, i, x)))
                        rep.violation("h-front", "h" + std::to_string(i) + " rho at " + loc(k, x));
                }
            }
        }
    }
    // f tau_{k,p} = tau_{k+1,p} h_i for 0 <= i <= k-p
    for (int k = 0; k <= N - 1; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int i = 0; i <= k - p; ++i) {
                for (int x = 0; x < U.level_size(k); ++x) {
                    rep.count("f-back");
                    if (f.at(p, U.back(k, p, x)) != V.back(k + 1, p, hom.at(k, i, x)))
                        rep.violation("f-back", "f tau vs h" + std::to_string(i) + " at " + loc(k, x));
                }
            }
        }
    }
    // g rho_{k,p} = rho_{k+1,p} h_i for p <= i <= k
    for (int k = 0; k <= N - 1; ++k) {
        for (int p = 0; p <= k; ++p) {
            for (int i = p; i <= k; ++i) {
                for (int x = 0; x < U.level_size(k); ++x) {
                    rep.count("g-front");
                    if (g.at(p, U.front(k, p, x)) != V.front(k + 1, p, hom.at(k, i, x)))
                        rep.violation("g-front", "g rho vs h" + std::to_string(i) + " at " + loc(k, x));
                }
            }
        }
    }
    return rep;
}

}  // namespace twc
