#include "solidangle/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace solidangle {

namespace {
constexpr double kPivotRel = 1e-12;   // singularity / positive-definiteness threshold
constexpr double kSymmetryRel = 1e-12;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}
} // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0.0) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
}

Matrix::Matrix(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
    require(data_.size() == std::size_t(rows) * cols, "entry count does not match dimensions");
    require(all_finite(data_), "matrix entries must be finite");
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

GramMatrix::GramMatrix(Matrix m) : m_(std::move(m)) {
    require(m_.square(), "Gram matrix must be square");
    double scale = 0.0;
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = 0; j < m_.cols(); ++j) scale = std::max(scale, std::abs(m_(i, j)));
    for (int i = 0; i < m_.rows(); ++i)
        for (int j = i + 1; j < m_.cols(); ++j)
            require(std::abs(m_(i, j) - m_(j, i)) <= kSymmetryRel * scale,
                    "Gram matrix must be symmetric");
}

GramMatrix gram(std::span<const Vector> vectors) {
    require(!vectors.empty(), "gram: empty vector list");
    const std::size_t m = vectors.front().size();
    require(m >= 1, "gram: vectors must have dimension >= 1");
    for (const auto& v : vectors) require(v.size() == m, "gram: dimension mismatch");

    const int d = int(vectors.size());
    Matrix g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            double s = 0.0;
            for (std::size_t c = 0; c < m; ++c) s += vectors[i][c] * vectors[j][c];
            g(i, j) = s;
            g(j, i) = s; // mirrored, so exactly symmetric
        }
    }
    return GramMatrix(std::move(g));
}

Matrix cholesky(const GramMatrix& g) {
    const int n = g.dim();
    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, g(i, i));
    const double tol = kPivotRel * std::max(max_diag, 1e-300);

    Matrix L(n, n);
    for (int j = 0; j < n; ++j) {
        double pivot = g(j, j);
        for (int k = 0; k < j; ++k) pivot -= L(j, k) * L(j, k);
        if (!(pivot > tol)) throw NotPositiveDefinite("cholesky: non-positive pivot");
        const double ljj = std::sqrt(pivot);
        L(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = g(i, j);
            for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
            L(i, j) = s / ljj;
        }
    }
    return L;
}

namespace {

// In-place LU with partial pivoting. Returns the permutation sign, fills perm.
// Throws Singular when a pivot is below tol.
double lu_decompose(Matrix& a, std::vector<int>& perm, double tol) {
    const int n = a.rows();
    perm.resize(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(a(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (best <= tol) throw Singular("lu: pivot below tolerance");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            std::swap(perm[k], perm[p]);
            sign = -sign;
        }
        const double inv = 1.0 / a(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = a(i, k) * inv;
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return sign;
}

double matrix_scale(const Matrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s = std::max(s, std::abs(a(i, j)));
    return s;
}

} // namespace

Vector solve(const Matrix& a, const Vector& b) {
    require(a.square(), "solve: matrix must be square");
    require(int(b.size()) == a.rows(), "solve: right-hand side length mismatch");
    const int n = a.rows();
    Matrix lu = a;
    std::vector<int> perm;
    lu_decompose(lu, perm, kPivotRel * std::max(matrix_scale(a), 1e-300));

    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = b[perm[i]];
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= lu(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu(i, j) * x[j];
        x[i] = s / lu(i, i);
    }
    return x;
}

double determinant(Matrix a) {
    require(a.square(), "determinant: matrix must be square");
    const int n = a.rows();
    std::vector<int> perm;
    double sign;
    try {
        sign = lu_decompose(a, perm, 0.0);
    } catch (const Singular&) {
        return 0.0; // exact zero pivot
    }
    double det = sign;
    for (int i = 0; i < n; ++i) det *= a(i, i);
    return det;
}

GramMatrix inverse(const GramMatrix& g) {
    const int n = g.dim();
    const Matrix L = cholesky(g);
    // Solve L L^T X = e_j column by column, then mirror the lower triangle so
    // the result is exactly symmetric.
    Matrix X(n, n);
    Vector col(n);
    for (int j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        for (int i = 0; i < n; ++i) {
            double s = col[i];
            for (int k = 0; k < i; ++k) s -= L(i, k) * col[k];
            col[i] = s / L(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = col[i];
            for (int k = i + 1; k < n; ++k) s -= L(k, i) * col[k];
            col[i] = s / L(i, i);
        }
        for (int i = 0; i < n; ++i) X(i, j) = col[i];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) X(i, j) = X(j, i);
    return GramMatrix(std::move(X));
}

GramMatrix correlation(const GramMatrix& g) {
    const int n = g.dim();
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
        require(g(i, i) > 0.0, "correlation: diagonal must be positive");
        s[i] = std::sqrt(g(i, i));
    }
    Matrix r(n, n);
    for (int i = 0; i < n; ++i) {
        r(i, i) = 1.0;
        for (int j = i + 1; j < n; ++j) {
            const double v = g(i, j) / (s[i] * s[j]);
            r(i, j) = v;
            r(j, i) = v;
        }
    }
    return GramMatrix(std::move(r));
}

double one_norm_condition(const GramMatrix& g) {
    auto norm1 = [](const Matrix& m) {
        double best = 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            double c = 0.0;
            for (int i = 0; i < m.rows(); ++i) c += std::abs(m(i, j));
            best = std::max(best, c);
        }
        return best;
    };
    return norm1(g.matrix()) * norm1(inverse(g).matrix());
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    require(int(x.size()) == a.cols(), "mat_vec: dimension mismatch");
    Vector y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "mat_mul: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double dot(const Vector& a, const Vector& b) {
    require(a.size() == b.size(), "dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const Vector& a) { return std::sqrt(dot(a, a)); }

} // namespace solidangle
