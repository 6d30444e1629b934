#pragma once

#include <span>
#include <vector>

#include "solidangle/errors.hpp"

namespace solidangle {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. The library only ever handles small
/// matrices (Gram matrices up to a few dozen rows), so everything is plain
/// O(n^3) with partial pivoting and no blocking.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols); // zero-initialized
    Matrix(int rows, int cols, std::vector<double> entries);

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }
    double& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }

    const double* data() const { return data_.data(); }
    double* data() { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Symmetric matrix of pairwise inner products. Construction rejects
/// asymmetric (beyond 1e-12 relative) or non-finite input. Positive
/// definiteness is not checked here; the operations that need it do.
class GramMatrix {
public:
    GramMatrix() = default;
    explicit GramMatrix(Matrix m);

    int dim() const { return m_.rows(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Matrix& matrix() const { return m_; }

    bool operator==(const GramMatrix&) const = default;

private:
    Matrix m_;
};

/// Gram matrix of a family of same-dimension vectors. Entry (i,j) is the dot
/// product of vectors i and j; the result is exactly symmetric (entries are
/// computed once and mirrored).
GramMatrix gram(std::span<const Vector> vectors);

/// Lower-triangular L with L*L^T = g. Throws NotPositiveDefinite when a pivot
/// falls below 1e-12 times the largest diagonal entry.
Matrix cholesky(const GramMatrix& g);

/// Solves a*x = b by LU with partial pivoting. Throws Singular when a pivot
/// falls below 1e-12 times the largest entry of a.
Vector solve(const Matrix& a, const Vector& b);

/// Determinant by LU with partial pivoting; sign is exact, zero is a valid
/// return for singular input.
double determinant(Matrix a);

/// Inverse of a positive-definite matrix via Cholesky; the result is exactly
/// symmetric.
GramMatrix inverse(const GramMatrix& g);

/// Scales g to unit diagonal: entry (i,j) becomes g(i,j)/sqrt(g(i,i)g(j,j)).
/// Idempotent bit-for-bit (a unit-diagonal input is returned unchanged).
GramMatrix correlation(const GramMatrix& g);

/// 1-norm condition number ||g||_1 * ||g^-1||_1. Used to report conditioning
/// of nearly flat simplices; requires positive definiteness.
double one_norm_condition(const GramMatrix& g);

Vector mat_vec(const Matrix& a, const Vector& x);
Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

double dot(const Vector& a, const Vector& b);
double norm(const Vector& a);

} // namespace solidangle
