#pragma once

#include <map>
#include <optional>

#include "twc/linalg.hpp"
#include "twc/matrix.hpp"

namespace twc {

/// Finitely supported degree -> rank table of a bounded free graded module.
/// Absent degrees mean rank 0.
struct GradedModule {
    std::map<int, int> dims;

    int dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }
    bool empty() const;
    int min_degree() const;  // only when !empty()
    int max_degree() const;
    int amplitude() const { return empty() ? 0 : max_degree() - min_degree(); }
    int total_rank() const;

    friend bool operator==(const GradedModule& a, const GradedModule& b);
};

/// Cochain complex of free modules: d_n : degree n -> degree n+1, d^2 = 0.
struct ChainComplex {
    BaseRing ring = BaseRing::rationals();
    GradedModule mod;
    std::map<int, Matrix> diff;  // stored only where both end dims are nonzero

    Matrix d(int n) const;
    void set_d(int n, Matrix m);

    /// Throws InvariantViolation when shapes are wrong or d^2 != 0.
    void validate() const;

    friend bool operator==(const ChainComplex& a, const ChainComplex& b);
};

/// Degree-0 map of complexes; f_n : C^n -> D^n.
struct ChainMap {
    ChainComplex source, target;
    std::map<int, Matrix> f;

    Matrix at(int n) const;
    bool commutes() const;  // f d = d f in every degree

    static ChainMap identity(const ChainComplex& c);
    static ChainMap zero(const ChainComplex& src, const ChainComplex& tgt);
};

/// dim H^n = dim ker d_n - rank d_{n-1}; requires d^2 = 0.
std::map<int, int> homology_dims(const ChainComplex& c);

/// Mapping cone: cone^n = C^{n+1} (+) D^n with differential [[-d_C, 0], [f, d_D]].
ChainComplex cone(const ChainMap& f);

/// True iff the mapping cone is acyclic. Throws when f is not a chain map.
bool is_quasi_iso(const ChainMap& f);

}  // namespace twc
