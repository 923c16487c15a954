#pragma once

#include <functional>

#include "twc/twisted.hpp"

namespace twc {

/// Prenatural transformation between the pullback functors along f and g
/// (both U -> V). Level 0 assigns to every object X over V a morphism
/// f^*X -> g^*X of the prenat's degree; level l >= 1 is a multilinear
/// evaluator on composable argument tuples (u_l, ..., u_1) over V, valued in
/// morphisms f^*X_0 -> g^*X_l of degree (degree - l + sum |u_i|). Components
/// are evaluators, so derived arguments (differentials, composites) are
/// formed on the fly; extensional (table-backed) components throw
/// StructuralError when evaluated outside their probe closure.
struct AinfPrenat {
    SimplicialMap f, g;
    int degree = 0;
    std::function<TwistedMorphism(const TwistedComplex&)> level0;
    // higher[l-1] evaluates level l; absent or empty entries are zero
    std::vector<std::function<TwistedMorphism(const std::vector<TwistedMorphism>&)>> higher;

    TwistedMorphism ev0(const TwistedComplex& x) const;
    /// args = (u_l, ..., u_1), args[0] = u_l
    TwistedMorphism ev(int l, const std::vector<TwistedMorphism>& args) const;
};

/// Finite verification window: objects over the common target space and
/// composable morphisms among them.
struct ProbeSet {
    std::vector<TwistedPtr> objects;
    std::vector<TwistedMorphism> morphisms;

    int object_index(const TwistedComplex& x) const;  // -1 when absent
};

/// Index tuples (i_l, ..., i_1) of composable probe morphisms.
std::vector<std::vector<int>> composable_tuples(const ProbeSet& probe, int len);

AinfPrenat identity_prenat(const SimplicialMap& f);

/// The differential on prenats. At degree 0 the term signs match the closure
/// equations used throughout; for general degree n terms 2..5 carry the extra
/// factors (-1)^{n(|u_l|+1)}, (-1)^{n(|u_1|+1)}, (-1)^n, (-1)^n which are
/// forced by d^2 = 0 (see docs/conventions.md).
AinfPrenat d_infinity(const AinfPrenat& phi);

/// Composition of closed degree-0 prenats (signless sum formula).
AinfPrenat compose_ainf(const AinfPrenat& psi, const AinfPrenat& phi);

/// Evaluate phi at levels 0..max_level over the probe and report any nonzero
/// value with its (level, tuple) location.
ValidationReport prenat_vanishes(const AinfPrenat& phi, const ProbeSet& probe, int max_level,
                                 const std::string& name);

/// Level-0 morphism induced by a simplicial homotopy:
/// component k = sum_{i=0..k} (-1)^i a^{k+1,-k} evaluated at h_i(x).
TwistedMorphism build_phi0(const SimplicialHomotopy& h, const TwistedComplex& t);

/// Level-1 morphism: component k = (-1)^{m-1} sum_i (-1)^i phi^{k+1,m-k-1} at h_i(x).
TwistedMorphism build_phi1(const SimplicialHomotopy& h, const TwistedMorphism& phi);

/// The transformation {Phi_0, Phi_1, 0, 0, ...} of degree 0.
AinfPrenat build_phi(const SimplicialHomotopy& h);

/// g^*(u) Phi_0(E) - (-1)^{|u|} Phi_0(F) f^*(u); generically nonzero.
TwistedMorphism naturality_defect(const SimplicialHomotopy& h, const TwistedMorphism& u);

/// Everything the homotopy-induced transformation promises, as one report:
/// closedness of Phi_0 per object, weak-equivalence of Phi_0, the level-1 and
/// level-2 morphism identities, vanishing of d^inf Phi at levels 0..max_level,
/// and the three pullback re-indexing identities behind the construction.
ValidationReport verify_phi(const SimplicialHomotopy& h, const ProbeSet& probe, int max_level = 3);

struct QuasiInverseWitness {
    AinfPrenat psi;    // degree 0, closed: G => F
    AinfPrenat eta;    // degree -1: F => F
    AinfPrenat omega;  // degree -1: G => G
};

/// Exact residuals of psi phi - id_F = d eta and phi psi - id_G = d omega
/// at levels 0..max_level over the probe.
ValidationReport verify_quasi_inverse(const AinfPrenat& phi, const QuasiInverseWitness& w,
                                      const ProbeSet& probe, int max_level = 2);

struct QuasiInverseCertificates {
    bool ok = true;
    std::vector<std::optional<HoInverse>> per_object;
};

/// Objectwise homotopy-invertibility of Phi^0 over the probe, with witnesses.
QuasiInverseCertificates quasi_inverse_exists(const AinfPrenat& phi, const ProbeSet& probe);

}  // namespace twc
