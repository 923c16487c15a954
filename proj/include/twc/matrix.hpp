#pragma once

#include <vector>

#include "twc/ring.hpp"

namespace twc {

/// Dense matrix over a BaseRing. Morphisms act on column vectors; composition
/// g*f applies f first. 0xN and Nx0 matrices are valid and behave as zero maps.
class Matrix {
public:
    Matrix() : ring_(BaseRing::rationals()), rows_(0), cols_(0) {}
    Matrix(BaseRing ring, int rows, int cols);  // zero-filled

    static Matrix identity(BaseRing ring, int n);

    const BaseRing& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Rational& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    void set(int i, int j, Rational v) { e_[static_cast<std::size_t>(i) * cols_ + j] = std::move(v); }

    bool is_zero() const;
    bool is_identity() const;

    Matrix operator-() const;
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix scaled(const Rational& s) const;
    Matrix& operator+=(const Matrix& b) { return *this = *this + b; }

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

private:
    BaseRing ring_;
    int rows_, cols_;
    std::vector<Rational> e_;
};

}  // namespace twc
