#include "twc/graded.hpp"

#include "twc/errors.hpp"

namespace twc {

bool GradedModule::empty() const {
    for (auto& [n, r] : dims) {
        if (r > 0) return false;
    }
    return true;
}

int GradedModule::min_degree() const {
    for (auto& [n, r] : dims) {
        if (r > 0) return n;
    }
    throw StructuralError("GradedModule: empty module has no min degree");
}

int GradedModule::max_degree() const {
    int best = 0;
    bool found = false;
    for (auto& [n, r] : dims) {
        if (r > 0) {
            best = n;
            found = true;
        }
    }
    if (!found) throw StructuralError("GradedModule: empty module has no max degree");
    return best;
}

int GradedModule::total_rank() const {
    int t = 0;
    for (auto& [n, r] : dims) t += r;
    return t;
}

bool operator==(const GradedModule& a, const GradedModule& b) {
    // compare supports (absent degree == rank 0)
    for (auto& [n, r] : a.dims) {
        if (r != b.dim(n)) return false;
    }
    for (auto& [n, r] : b.dims) {
        if (r != a.dim(n)) return false;
    }
    return true;
}

Matrix ChainComplex::d(int n) const {
    auto it = diff.find(n);
    if (it != diff.end()) return it->second;
    return Matrix(ring, mod.dim(n + 1), mod.dim(n));
}

void ChainComplex::set_d(int n, Matrix m) {
    if (m.rows() != mod.dim(n + 1) || m.cols() != mod.dim(n))
        throw StructuralError("ChainComplex: differential shape mismatch at degree " + std::to_string(n));
    if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) {
        diff.erase(n);
        return;
    }
    diff[n] = std::move(m);
}

void ChainComplex::validate() const {
    for (auto& [n, m] : diff) {
        if (m.rows() != mod.dim(n + 1) || m.cols() != mod.dim(n))
            throw InvariantViolation("ChainComplex: differential shape mismatch at degree " + std::to_string(n));
        if (m.ring() != ring) throw InvariantViolation("ChainComplex: differential over wrong ring");
    }
    for (auto& [n, m] : diff) {
        if (mod.dim(n + 2) == 0) continue;
        Matrix sq = d(n + 1) * m;
        if (!sq.is_zero())
            throw InvariantViolation("ChainComplex: d^2 != 0 at degree " + std::to_string(n));
    }
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (a.ring != b.ring || !(a.mod == b.mod)) return false;
    for (auto& [n, m] : a.diff) {
        if (b.d(n) != m) return false;
    }
    for (auto& [n, m] : b.diff) {
        if (a.d(n) != m) return false;
    }
    return true;
}

Matrix ChainMap::at(int n) const {
    auto it = f.find(n);
    if (it != f.end()) return it->second;
    return Matrix(source.ring, target.mod.dim(n), source.mod.dim(n));
}

bool ChainMap::commutes() const {
    for (auto& [n, r] : source.mod.dims) {
        if (target.d(n) * at(n) != at(n + 1) * source.d(n)) return false;
    }
    return true;
}

ChainMap ChainMap::identity(const ChainComplex& c) {
    ChainMap out{c, c, {}};
    for (auto& [n, r] : c.mod.dims) {
        if (r > 0) out.f[n] = Matrix::identity(c.ring, r);
    }
    return out;
}

ChainMap ChainMap::zero(const ChainComplex& src, const ChainComplex& tgt) {
    return ChainMap{src, tgt, {}};
}

std::map<int, int> homology_dims(const ChainComplex& c) {
    c.validate();
    std::map<int, int> h;
    for (auto& [n, r] : c.mod.dims) {
        if (r == 0) continue;
        int rk_out = rank(c.d(n));
        int rk_in = rank(c.d(n - 1));
        int hn = r - rk_out - rk_in;
        if (hn != 0) h[n] = hn;
    }
    return h;
}

ChainComplex cone(const ChainMap& fm) {
    const ChainComplex& C = fm.source;
    const ChainComplex& D = fm.target;
    if (C.ring != D.ring) throw StructuralError("cone: ring mismatch");
    ChainComplex out;
    out.ring = C.ring;
    for (auto& [n, r] : C.mod.dims) {
        if (r > 0) out.mod.dims[n - 1] += r;
    }
    for (auto& [n, r] : D.mod.dims) {
        if (r > 0) out.mod.dims[n] += r;
    }
    for (auto it = out.mod.dims.begin(); it != out.mod.dims.end();) {
        it = it->second == 0 ? out.mod.dims.erase(it) : std::next(it);
    }
    for (auto& [n, r] : out.mod.dims) {
        int c1 = C.mod.dim(n + 1), c2 = D.mod.dim(n);
        int r1 = C.mod.dim(n + 2), r2 = D.mod.dim(n + 1);
        Matrix m(out.ring, r1 + r2, c1 + c2);
        Matrix dc = C.d(n + 1);
        for (int i = 0; i < r1; ++i)
            for (int j = 0; j < c1; ++j) m.set(i, j, out.ring.neg(dc.at(i, j)));
        Matrix fb = fm.at(n + 1);
        for (int i = 0; i < r2; ++i)
            for (int j = 0; j < c1; ++j) m.set(r1 + i, j, fb.at(i, j));
        Matrix dd = D.d(n);
        for (int i = 0; i < r2; ++i)
            for (int j = 0; j < c2; ++j) m.set(r1 + i, c1 + j, dd.at(i, j));
        out.set_d(n, std::move(m));
    }
    return out;
}

bool is_quasi_iso(const ChainMap& f) {
    f.source.validate();
    f.target.validate();
    if (!f.commutes()) throw InvariantViolation("is_quasi_iso: input is not a chain map");
    return homology_dims(cone(f)).empty();
}

}  // namespace twc
