#pragma once

#include "twc/ainf.hpp"
#include "twc/rng.hpp"

namespace twc {

/// Seeded instance construction. Everything flows from one SplitMix64 stream,
/// so equal seeds give identical instances.
namespace gen {

CoverSpec random_cover(SplitMix64& rng, int max_sets, int max_points);

Matrix random_matrix(SplitMix64& rng, const BaseRing& ring, int rows, int cols,
                     int density_pct = 60);
Matrix random_invertible(SplitMix64& rng, const BaseRing& ring, int n);

/// Bounded complex in split form (known homology), conjugated by a random
/// automorphism so the differential looks generic while d^2 = 0 holds exactly.
struct ComplexShape {
    GradedModule mod;
    std::map<int, Matrix> diff;
};
ComplexShape random_complex_shape(SplitMix64& rng, const BaseRing& ring, int min_deg, int amplitude,
                                  int max_rank);

/// Constant sheaf with one shape at every point, connection (d, identity, 0, ...).
TwistedPtr pullback_type_twisted(const SpacePtr& space, const BaseRing& ring,
                                 const ComplexShape& shape);

/// Invertible degree-0 endomorphism element with random level-0 blocks and
/// random sparse higher pieces.
CechElement random_gauge_element(SplitMix64& rng, const SheafPtr& e, int max_level);

/// Gauge-transformed pullback-type instance; flatness is checked on
/// construction, so the result is always a valid twisted complex.
TwistedPtr random_twisted(SplitMix64& rng, const SpacePtr& space, const BaseRing& ring, int min_deg,
                          int amplitude, int max_rank, int gauge_levels);

/// Random components at every support-allowed key (not closed in general).
TwistedMorphism random_morphism(SplitMix64& rng, const TwistedPtr& s, const TwistedPtr& t,
                                int degree, int density_pct = 50);

/// f, g and a combinatorial homotopy between them, extracted from a cylinder
/// map. "fold": target = base x interval, H((x,a),b) = (x, min/max(a,b));
/// "constant": f = g = id on a nerve.
struct HomotopyInstance {
    SpacePtr target;  // the space carrying the twisted complexes
    SimplicialHomotopy h;
    std::string orientation;
    std::string kind;
};
HomotopyInstance fold_homotopy_instance(SplitMix64& rng, int max_sets, int max_points,
                                        int truncation);
HomotopyInstance constant_homotopy_instance(SplitMix64& rng, int max_sets, int max_points,
                                            int truncation);

/// Objects and morphisms over instance.target, sized for exact-arithmetic runs.
ProbeSet random_probe(SplitMix64& rng, const HomotopyInstance& inst, const BaseRing& ring,
                      int n_objects, int n_morphisms, int amplitude, int max_rank);

/// Sandwich-style prenat between the pullback functors along f and g: level j
/// uses a fixed random degree-(degree - j) morphism family composed with the
/// functor images of the arguments. Genuinely multilinear; evaluation outside
/// the probe objects throws StructuralError.
AinfPrenat random_prenat(SplitMix64& rng, const SimplicialMap& f, const SimplicialMap& g,
                         const ProbeSet& probe, int degree, int max_level);

}  // namespace gen

}  // namespace twc
