#pragma once

#include <memory>
#include <string>
#include <vector>

#include "twc/report.hpp"

namespace twc {

/// Finite simplicial set truncated at level N. Simplices carry stable integer
/// indices per level (ids are for serialization); face and degeneracy maps are
/// index arrays. Identities are only asserted where both sides exist within
/// the truncation window.
struct SimplicialSpace {
    int truncation = 0;                                 // N
    std::vector<std::vector<std::string>> ids;          // ids[n], 0 <= n <= N
    std::vector<std::vector<std::vector<int>>> faces;   // faces[n][i]: U_n -> U_{n-1}, 1 <= n <= N
    std::vector<std::vector<std::vector<int>>> degen;   // degen[n][i]: U_n -> U_{n+1}, 0 <= n < N

    int level_size(int n) const { return static_cast<int>(ids[n].size()); }
    int face(int n, int i, int x) const { return faces[n][i][x]; }
    int degeneracy(int n, int i, int x) const { return degen[n][i][x]; }

    /// rho_{k,p} = face_{p+1} ... face_k applied to x in U_k (front face)
    int front(int k, int p, int x) const;
    /// tau_{k,p} = face_0 applied (k-p) times (back face)
    int back(int k, int p, int x) const;

    /// Shape sanity of the index tables; throws StructuralError.
    void check_structure() const;

    friend bool operator==(const SimplicialSpace& a, const SimplicialSpace& b) {
        return a.truncation == b.truncation && a.ids == b.ids && a.faces == b.faces &&
               a.degen == b.degen;
    }
};

using SpacePtr = std::shared_ptr<const SimplicialSpace>;

struct SimplicialMap {
    SpacePtr source, target;
    std::vector<std::vector<int>> comp;  // comp[n]: U_n -> V_n

    int at(int n, int x) const { return comp[n][x]; }
    static SimplicialMap identity(SpacePtr s);

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
        return *a.source == *b.source && *a.target == *b.target && a.comp == b.comp;
    }
};

/// g after f (levelwise composition); requires f.target == g.source.
SimplicialMap compose_maps(const SimplicialMap& g, const SimplicialMap& f);

/// Combinatorial homotopy between f and g: h[p][i]: U_p -> V_{p+1} for
/// 0 <= i <= p, 0 <= p <= N-1.
struct SimplicialHomotopy {
    SimplicialMap f, g;
    std::vector<std::vector<std::vector<int>>> h;

    int at(int p, int i, int x) const { return h[p][i][x]; }
    int levels() const { return static_cast<int>(h.size()); }
};

/// Cover of a finite ground set; nerve levels are index tuples with nonempty
/// intersection (repetitions allowed, empty intersections dropped).
struct CoverSpec {
    std::vector<std::string> points;                       // ground set, <= 64 points
    std::vector<std::string> set_names;
    std::vector<std::uint64_t> set_masks;                  // bit i <-> points[i]

    void check() const;  // covers the ground set, nonempty, <= 64 points
};

SpacePtr nerve(const CoverSpec& cover, int truncation);

/// Exhaustive check of the five simplicial identities within truncation.
ValidationReport validate_simplicial(const SimplicialSpace& s);

/// Levelwise compatibility of a map with faces and degeneracies.
ValidationReport validate_map(const SimplicialMap& f);

/// Front/back face composite laws and their naturality for maps.
ValidationReport validate_face_composites(const SimplicialSpace& s);
ValidationReport validate_map_composites(const SimplicialMap& f);

/// Full composite index map of rho_{k,p} / tau_{k,p} on level k.
std::vector<int> front_face(const SimplicialSpace& s, int k, int p);
std::vector<int> back_face(const SimplicialSpace& s, int k, int p);

/// S x Delta^1 with the two end inclusions. Cylinder elements are encoded as
/// x * (n + 2) + j where j counts the leading zeros of a monotone [n] -> [1].
struct Cylinder {
    SpacePtr base;
    SpacePtr space;
    SimplicialMap eps0, eps1;  // x -> (x, const 0) and x -> (x, const 1)

    int pair_index(int n, int x, int j) const { return x * (n + 2) + j; }
};

Cylinder cylinder(SpacePtr s);

/// Def-3.2-style homotopy extracted from a simplicial map H on the cylinder,
/// with the orientation ("natural": del_0 h_0 = H eps0, or "mirrored":
/// del_0 h_0 = H eps1) that makes the extraction valid.
struct HomotopyExtraction {
    SimplicialHomotopy homotopy;
    std::string orientation;
};

HomotopyExtraction homotopy_from_cylinder(const Cylinder& cyl, const SimplicialMap& H);

/// All clauses of the combinatorial homotopy definition plus the derived
/// front/back face exchange identities, exhaustively within truncation.
ValidationReport validate_homotopy(const SimplicialHomotopy& h);

}  // namespace twc
