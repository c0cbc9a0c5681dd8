#pragma once

#include <span>
#include <vector>

namespace sac {

// Dense real matrix, row-major, value semantics. Desk scale only.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }
    double operator()(int i, int j) const {
        return data_[static_cast<std::size_t>(i) * cols_ + j];
    }

    std::span<const double> data() const { return data_; }
    std::vector<double> column(int j) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);
double frobenius_norm(const Matrix& m);
double max_abs(const Matrix& m);

// Symmetric matrix, validated on construction: off-symmetry above
// 1e-12 * ||M||_F is rejected, anything below is averaged away so the stored
// matrix is exactly symmetric.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(Matrix m);
    static SymMatrix diagonal(std::span<const double> values);

    int size() const { return m_.rows(); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Matrix& mat() const { return m_; }

private:
    struct AlreadySymmetric {};
    SymMatrix(Matrix m, AlreadySymmetric) : m_(std::move(m)) {}
    friend SymMatrix symmetric_unchecked(Matrix m);
    Matrix m_;
};

// For matrices symmetric by construction (skips the tolerance check).
SymMatrix symmetric_unchecked(Matrix m);

// Eigenvalues ascending; eigenvector k in column k, columns orthonormal.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix eigenvectors;
};

// Cyclic Jacobi diagonalization. Rotation threshold 1e-15 * ||M||_F,
// at most 30 full sweeps (ConvergenceError beyond that), n <= 512.
EigenDecomposition eigensolve(const SymMatrix& m);

// Largest singular value via eigensolve of the smaller Gram matrix.
double spectral_norm(const Matrix& b);

// Acute angle between a nonzero vector and the span of orthonormal columns.
// tan_theta is +inf when the projection is below 1e-14 * ||f||.
struct SubspaceAngle {
    double theta;     // radians, in [0, pi/2]
    double tan_theta; // may be +inf
};

SubspaceAngle angle_to_subspace(std::span<const double> f, const Matrix& basis);

} // namespace sac
