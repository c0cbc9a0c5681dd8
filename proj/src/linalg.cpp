#include "sac/linalg.hpp"

#include "sac/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace sac {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw DimensionError("Matrix: negative dimension");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix Matrix::identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<double> Matrix::column(int j) const {
    std::vector<double> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw DimensionError("matmul: inner dimensions differ");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
    return t;
}

double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

double max_abs(const Matrix& m) {
    double s = 0.0;
    for (double v : m.data()) s = std::max(s, std::abs(v));
    return s;
}

SymMatrix::SymMatrix(Matrix m) {
    if (m.rows() != m.cols())
        throw DimensionError("SymMatrix: matrix is not square");
    const int n = m.rows();
    const double tol = 1e-12 * frobenius_norm(m);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol)
                throw DomainError("SymMatrix: matrix is not symmetric within 1e-12*|M|");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = v;
            m(j, i) = v;
        }
    m_ = std::move(m);
}

SymMatrix SymMatrix::diagonal(std::span<const double> values) {
    Matrix m(static_cast<int>(values.size()), static_cast<int>(values.size()));
    for (int i = 0; i < m.rows(); ++i) m(i, i) = values[i];
    return symmetric_unchecked(std::move(m));
}

SymMatrix symmetric_unchecked(Matrix m) {
    if (m.rows() != m.cols())
        throw DimensionError("SymMatrix: matrix is not square");
    return SymMatrix(std::move(m), SymMatrix::AlreadySymmetric{});
}

EigenDecomposition eigensolve(const SymMatrix& sm) {
    const int n = sm.size();
    if (n > 512)
        throw DomainError("eigensolve: dimension exceeds the supported desk scale (512)");

    Matrix a = sm.mat();
    Matrix q = Matrix::identity(n);

    if (n > 1) {
        const double thresh = 1e-15 * frobenius_norm(a);
        const int max_sweeps = 30;
        bool converged = false;
        for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
            int rotations = 0;
            for (int p = 0; p < n - 1; ++p) {
                for (int r = p + 1; r < n; ++r) {
                    const double apr = a(p, r);
                    if (!(std::abs(apr) > thresh)) continue;
                    ++rotations;
                    const double tau = (a(r, r) - a(p, p)) / (2.0 * apr);
                    const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                     (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;
                    // A <- J^T A J, J the rotation in the (p, r) plane
                    for (int k = 0; k < n; ++k) {
                        const double akp = a(k, p);
                        const double akr = a(k, r);
                        a(k, p) = c * akp - s * akr;
                        a(k, r) = s * akp + c * akr;
                    }
                    for (int k = 0; k < n; ++k) {
                        const double apk = a(p, k);
                        const double ark = a(r, k);
                        a(p, k) = c * apk - s * ark;
                        a(r, k) = s * apk + c * ark;
                    }
                    a(p, r) = 0.0;
                    a(r, p) = 0.0;
                    for (int k = 0; k < n; ++k) {
                        const double qkp = q(k, p);
                        const double qkr = q(k, r);
                        q(k, p) = c * qkp - s * qkr;
                        q(k, r) = s * qkp + c * qkr;
                    }
                }
            }
            converged = rotations == 0;
        }
        if (!converged)
            throw ConvergenceError("eigensolve: Jacobi did not settle within 30 sweeps");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&a](int i, int j) { return a(i, i) < a(j, j); });

    EigenDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]);
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = q(i, order[k]);
    }
    return out;
}

double spectral_norm(const Matrix& b) {
    if (b.rows() == 0 || b.cols() == 0) return 0.0;
    const bool use_bbt = b.rows() <= b.cols();
    const int m = use_bbt ? b.rows() : b.cols();
    Matrix gram(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            double s = 0.0;
            if (use_bbt) {
                for (int k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
            } else {
                for (int k = 0; k < b.rows(); ++k) s += b(k, i) * b(k, j);
            }
            gram(i, j) = s;
            gram(j, i) = s;
        }
    const EigenDecomposition e = eigensolve(symmetric_unchecked(std::move(gram)));
    return std::sqrt(std::max(e.eigenvalues.back(), 0.0));
}

SubspaceAngle angle_to_subspace(std::span<const double> f, const Matrix& basis) {
    const int n = static_cast<int>(f.size());
    const int k = basis.cols();
    if (basis.rows() != n)
        throw DimensionError("angle_to_subspace: basis rows do not match vector length");
    if (k < 1 || k > n)
        throw DomainError("angle_to_subspace: basis must have between 1 and n columns");

    double fn2 = 0.0;
    for (double v : f) fn2 += v * v;
    const double fn = std::sqrt(fn2);
    if (!(fn > 0.0))
        throw DomainError("angle_to_subspace: zero vector has no direction");

    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) {
            double g = 0.0;
            for (int r = 0; r < n; ++r) g += basis(r, i) * basis(r, j);
            if (std::abs(g - (i == j ? 1.0 : 0.0)) > 1e-10)
                throw DomainError("angle_to_subspace: basis columns are not orthonormal within 1e-10");
        }

    std::vector<double> coef(k, 0.0);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < n; ++i) coef[j] += basis(i, j) * f[i];

    double pn2 = 0.0;
    double rn2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double p = 0.0;
        for (int j = 0; j < k; ++j) p += basis(i, j) * coef[j];
        pn2 += p * p;
        const double r = f[i] - p;
        rn2 += r * r;
    }
    const double pn = std::sqrt(pn2);
    const double rn = std::sqrt(rn2);
    if (pn < 1e-14 * fn)
        return {std::asin(1.0), std::numeric_limits<double>::infinity()};
    return {std::atan2(rn, pn), rn / pn};
}

} // namespace sac
