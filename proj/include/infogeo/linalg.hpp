#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace infogeo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Real symmetric n×n matrix. Storage is symmetrized on construction, so
/// entry (i,j) and (j,i) are always bit-identical.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(int n);
    /// Rejects non-square input and asymmetry above tol·(1 + max|m_ij|).
    explicit SymMatrix(const Matrix& m, double tol = 1e-12);

    static SymMatrix identity(int n);
    static SymMatrix diagonal(const Vector& d);
    /// E_ii when i == j, otherwise F_ij = E_ij + E_ji.
    static SymMatrix unit(int n, int i, int j);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const noexcept { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }
    double max_abs() const;
    double trace() const { return m_.trace(); }

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double s);

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
    friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
    friend SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
    friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
    friend SymMatrix operator-(SymMatrix a) { return a *= -1.0; }

private:
    struct Trusted {};
    SymMatrix(Matrix m, Trusted) : m_(std::move(m)) {}
    friend SymMatrix symmetrize(const Matrix& m);

    Matrix m_;
};

/// (m + mᵀ)/2 without any asymmetry check.
SymMatrix symmetrize(const Matrix& m);

struct EigenDecomposition {
    Vector values;   // descending
    Matrix vectors;  // column k pairs with values[k]; orthogonal
};

/// Cyclic Jacobi. Converges when the off-diagonal Frobenius norm drops below
/// 1e-14·‖S‖_F; throws numerical_failure after 100 sweeps.
EigenDecomposition eig_sym(const SymMatrix& s);

/// SPD matrix with its eigendecomposition, inverse and log-determinant cached.
/// Construction rejects λ_min ≤ 1e-10·λ_max.
class SpdMatrix {
public:
    static constexpr double kDefinitenessTolerance = 1e-10;

    explicit SpdMatrix(const SymMatrix& s);
    explicit SpdMatrix(const Matrix& m);
    static SpdMatrix identity(int n);

    int dim() const noexcept { return sym_.dim(); }
    const SymMatrix& sym() const noexcept { return sym_; }
    const Matrix& matrix() const noexcept { return sym_.matrix(); }
    const Vector& eigenvalues() const noexcept { return eig_.values; }
    const Matrix& eigenvectors() const noexcept { return eig_.vectors; }

    double det() const;
    double log_det() const noexcept { return log_det_; }
    const Matrix& inverse() const noexcept { return inverse_; }
    Matrix sqrt() const;
    Matrix inv_sqrt() const;
    SymMatrix log() const;

private:
    SymMatrix sym_;
    EigenDecomposition eig_;
    Matrix inverse_;
    double log_det_ = 0.0;
};

using ScalarFunction = std::function<double(double)>;

/// Q f(Λ) Qᵀ. Throws domain if f is non-finite at any eigenvalue.
SymMatrix spectral_apply(const SpdMatrix& s, const ScalarFunction& f);
SymMatrix spectral_apply(const SymMatrix& s, const ScalarFunction& f);

/// exp of a symmetric (not necessarily definite) matrix.
SpdMatrix sym_exp(const SymMatrix& s);

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

/// Compares the smallest eigenvalue against ±tol.
Definiteness spd_classify(const SymMatrix& s, double tol);

/// E_11..E_nn, then F_12, F_13, ..., F_{n-1,n}.
std::vector<SymMatrix> sym_basis(int n);

/// Index of F_ij (i < j) or E_ii inside sym_basis(n).
int sym_basis_index(int n, int i, int j);

/// Coordinates of s in sym_basis(n): diagonal entries, then upper off-diagonals.
Vector sym_coordinates(const SymMatrix& s);
SymMatrix sym_from_coordinates(int n, const Vector& c);

}  // namespace infogeo
