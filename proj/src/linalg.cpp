#include "twc/linalg.hpp"

#include <utility>

#include "twc/errors.hpp"

namespace twc {

namespace {

// Gauss-Jordan over an abstract field. Reduces the first lead_cols columns of m
// in place with the fixed pivot rule (columns left to right, first remaining
// row with a nonzero entry). Records (row, col) pivots. Fully reduced: pivot
// entries are 1 and their columns are cleared above and below.
template <class Ops>
int gauss_jordan(std::vector<std::vector<typename Ops::T>>& m, int lead_cols, const Ops& ops,
                 std::vector<std::pair<int, int>>* pivots) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    int r = 0;
    for (int c = 0; c < lead_cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i) {
            if (!ops.is_zero(m[i][c])) {
                piv = i;
                break;
            }
        }
        if (piv < 0) continue;
        std::swap(m[r], m[piv]);
        auto inv = ops.inv(m[r][c]);
        for (int j = c; j < cols; ++j) m[r][j] = ops.mul(m[r][j], inv);
        for (int i = 0; i < rows; ++i) {
            if (i == r || ops.is_zero(m[i][c])) continue;
            auto f = m[i][c];
            for (int j = c; j < cols; ++j) {
                m[i][j] = ops.sub(m[i][j], ops.mul(f, m[r][j]));
            }
        }
        if (pivots) pivots->emplace_back(r, c);
        ++r;
    }
    return r;
}

struct QOps {
    using T = Rational;
    bool is_zero(const T& x) const { return x.is_zero(); }
    T inv(const T& x) const { return Rational(1) / x; }
    T mul(const T& a, const T& b) const { return a * b; }
    T sub(const T& a, const T& b) const { return a - b; }
};

struct FpOps {
    std::uint64_t p;
    using T = std::uint64_t;
    bool is_zero(T x) const { return x == 0; }
    T inv(T x) const {
        T r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    }
    T mul(T a, T b) const { return a * b % p; }
    T sub(T a, T b) const { return (a + p - b) % p; }
};

std::vector<std::vector<Rational>> to_rows(const Matrix& a, const std::vector<Rational>* aug) {
    std::vector<std::vector<Rational>> m(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        m[i].reserve(a.cols() + (aug ? 1 : 0));
        for (int j = 0; j < a.cols(); ++j) m[i].push_back(a.at(i, j));
        if (aug) m[i].push_back((*aug)[i]);
    }
    return m;
}

std::vector<std::vector<std::uint64_t>> to_rows_fp(const Matrix& a, const std::vector<Rational>* aug) {
    std::vector<std::vector<std::uint64_t>> m(a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        m[i].reserve(a.cols() + (aug ? 1 : 0));
        for (int j = 0; j < a.cols(); ++j)
            m[i].push_back(static_cast<std::uint64_t>(a.at(i, j).num().to_int64()));
        if (aug) m[i].push_back(static_cast<std::uint64_t>((*aug)[i].num().to_int64()));
    }
    return m;
}

}  // namespace

int rank(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    if (a.ring().kind() == RingKind::PrimeField) {
        auto m = to_rows_fp(a, nullptr);
        return gauss_jordan(m, a.cols(), FpOps{a.ring().p()}, nullptr);
    }
    auto m = to_rows(a, nullptr);
    return gauss_jordan(m, a.cols(), QOps{}, nullptr);
}

std::optional<std::vector<Rational>> solve_affine(const Matrix& a, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != a.rows())
        throw StructuralError("solve_affine: rhs length does not match rows");
    const BaseRing& ring = a.ring();
    std::vector<Rational> x(a.cols(), ring.zero());
    if (a.rows() == 0) return x;  // no constraints
    std::vector<std::pair<int, int>> pivots;
    if (ring.kind() == RingKind::PrimeField) {
        auto m = to_rows_fp(a, &b);
        int r = gauss_jordan(m, a.cols(), FpOps{ring.p()}, &pivots);
        for (int i = r; i < a.rows(); ++i) {
            if (m[i][a.cols()] != 0) return std::nullopt;
        }
        for (auto [row, col] : pivots)
            x[col] = Rational(static_cast<long long>(m[row][a.cols()]));
        return x;
    }
    auto m = to_rows(a, &b);
    int r = gauss_jordan(m, a.cols(), QOps{}, &pivots);
    for (int i = r; i < a.rows(); ++i) {
        if (!m[i][a.cols()].is_zero()) return std::nullopt;
    }
    for (auto [row, col] : pivots) x[col] = m[row][a.cols()];
    return x;
}

std::optional<Matrix> try_inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw StructuralError("try_inverse: matrix not square");
    const int n = a.rows();
    const BaseRing& ring = a.ring();
    if (n == 0) return Matrix(ring, 0, 0);
    if (ring.kind() == RingKind::PrimeField) {
        auto m = to_rows_fp(a, nullptr);
        for (int i = 0; i < n; ++i) {
            m[i].resize(2 * n, 0);
            m[i][n + i] = 1;
        }
        int r = gauss_jordan(m, n, FpOps{ring.p()}, nullptr);
        if (r < n) return std::nullopt;
        Matrix out(ring, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out.set(i, j, Rational(static_cast<long long>(m[i][n + j])));
        return out;
    }
    auto m = to_rows(a, nullptr);
    for (int i = 0; i < n; ++i) {
        m[i].resize(2 * n, ring.zero());
        m[i][n + i] = ring.one();
    }
    int r = gauss_jordan(m, n, QOps{}, nullptr);
    if (r < n) return std::nullopt;
    Matrix out(ring, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out.set(i, j, m[i][n + j]);
    return out;
}

}  // namespace twc
