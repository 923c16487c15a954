#include "twc/matrix.hpp"

#include "twc/errors.hpp"

namespace twc {

Matrix::Matrix(BaseRing ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols),
      e_(static_cast<std::size_t>(rows) * cols, ring.zero()) {
    if (rows < 0 || cols < 0) throw StructuralError("Matrix: negative shape");
}

Matrix Matrix::identity(BaseRing ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, ring.one());
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_) {
        if (!v.is_zero()) return false;
    }
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j) != (i == j ? ring_.one() : ring_.zero())) return false;
        }
    }
    return true;
}

Matrix Matrix::operator-() const {
    Matrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = ring_.neg(e_[k]);
    return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.ring_ != b.ring_)
        throw StructuralError("Matrix: shape/ring mismatch in +");
    Matrix out(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.ring_.add(a.e_[k], b.e_[k]);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.ring_ != b.ring_)
        throw StructuralError("Matrix: shape/ring mismatch in -");
    Matrix out(a.ring_, a.rows_, a.cols_);
    for (std::size_t k = 0; k < a.e_.size(); ++k) out.e_[k] = a.ring_.sub(a.e_[k], b.e_[k]);
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_ || a.ring_ != b.ring_)
        throw StructuralError("Matrix: shape/ring mismatch in *");
    Matrix out(a.ring_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int k = 0; k < a.cols_; ++k) {
            const Rational& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) {
                const Rational& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                out.set(i, j, a.ring_.add(out.at(i, j), a.ring_.mul(aik, bkj)));
            }
        }
    }
    return out;
}

Matrix Matrix::scaled(const Rational& s) const {
    Matrix out(ring_, rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = ring_.mul(e_[k], s);
    return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

std::vector<Rational> Matrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw StructuralError("Matrix: vector length mismatch");
    std::vector<Rational> out(rows_, ring_.zero());
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (at(i, j).is_zero() || v[j].is_zero()) continue;
            out[i] = ring_.add(out[i], ring_.mul(at(i, j), v[j]));
        }
    }
    return out;
}

}  // namespace twc
