#include "infogeo/linalg.hpp"

#include "infogeo/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace infogeo {

SymMatrix::SymMatrix(int n) : m_(Matrix::Zero(n, n)) {
    if (n < 1) fail(ErrorCode::domain, "matrix dimension must be positive");
}

SymMatrix::SymMatrix(const Matrix& m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1)
        fail(ErrorCode::domain, "symmetric matrix must be square and non-empty");
    if (!m.allFinite()) fail(ErrorCode::domain, "matrix has non-finite entries");
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol * scale) {
        std::ostringstream os;
        os << "matrix is not symmetric (max |m - m^T| = " << asym << ")";
        fail(ErrorCode::domain, os.str());
    }
    m_ = 0.5 * (m + m.transpose());
}

SymMatrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() < 1)
        fail(ErrorCode::domain, "symmetric matrix must be square and non-empty");
    return SymMatrix(Matrix(0.5 * (m + m.transpose())), SymMatrix::Trusted{});
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix s(n);
    s.m_.setIdentity();
    return s;
}

SymMatrix SymMatrix::diagonal(const Vector& d) {
    SymMatrix s(static_cast<int>(d.size()));
    s.m_.diagonal() = d;
    return s;
}

SymMatrix SymMatrix::unit(int n, int i, int j) {
    SymMatrix s(n);
    if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorCode::domain, "basis index out of range");
    s.m_(i, j) = 1.0;
    s.m_(j, i) = 1.0;
    return s;
}

double SymMatrix::max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    if (o.dim() != dim()) fail(ErrorCode::domain, "dimension mismatch");
    m_ += o.m_;
    return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    if (o.dim() != dim()) fail(ErrorCode::domain, "dimension mismatch");
    m_ -= o.m_;
    return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

EigenDecomposition eig_sym(const SymMatrix& s) {
    const int n = s.dim();
    Matrix a = s.matrix();
    Matrix v = Matrix::Identity(n, n);
    const double norm = a.norm();

    auto off_norm = [&] {
        double acc = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) acc += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(acc);
    };

    constexpr int kMaxSweeps = 100;
    constexpr double kThreshold = 1e-14;
    int sweep = 0;
    while (norm > 0.0 && off_norm() > kThreshold * norm) {
        if (++sweep > kMaxSweeps)
            fail(ErrorCode::numerical_failure, "Jacobi eigensolver did not converge in 100 sweeps");
        bool rotated = false;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - sn * vkq;
                    v(k, q) = sn * vkp + c * vkq;
                }
                rotated = true;
            }
        }
        if (!rotated) break;
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i) > a(j, j); });
    EigenDecomposition out{Vector(n), Matrix(n, n)};
    for (int k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

namespace {

Matrix reconstruct(const EigenDecomposition& e, const Vector& fvals) {
    return e.vectors * fvals.asDiagonal() * e.vectors.transpose();
}

Vector apply_checked(const Vector& values, const ScalarFunction& f) {
    Vector out(values.size());
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        out[k] = f(values[k]);
        if (!std::isfinite(out[k]))
            fail(ErrorCode::domain, "spectral function is not finite at an eigenvalue");
    }
    return out;
}

}  // namespace

SpdMatrix::SpdMatrix(const SymMatrix& s) : sym_(s), eig_(eig_sym(s)) {
    const double lmax = eig_.values[0];
    const double lmin = eig_.values[dim() - 1];
    if (!(lmax > 0.0) || !(lmin > kDefinitenessTolerance * lmax)) {
        std::ostringstream os;
        os << "matrix is not positive definite (eigenvalues in [" << lmin << ", " << lmax << "])";
        fail(ErrorCode::domain, os.str());
    }
    log_det_ = eig_.values.array().log().sum();
    inverse_ = symmetrize(reconstruct(eig_, eig_.values.cwiseInverse())).matrix();
}

SpdMatrix::SpdMatrix(const Matrix& m) : SpdMatrix(SymMatrix(m)) {}

SpdMatrix SpdMatrix::identity(int n) { return SpdMatrix(SymMatrix::identity(n)); }

double SpdMatrix::det() const { return std::exp(log_det_); }

Matrix SpdMatrix::sqrt() const {
    return symmetrize(reconstruct(eig_, eig_.values.cwiseSqrt())).matrix();
}

Matrix SpdMatrix::inv_sqrt() const {
    return symmetrize(reconstruct(eig_, eig_.values.cwiseSqrt().cwiseInverse())).matrix();
}

SymMatrix SpdMatrix::log() const {
    return symmetrize(reconstruct(eig_, eig_.values.array().log().matrix()));
}

SymMatrix spectral_apply(const SpdMatrix& s, const ScalarFunction& f) {
    EigenDecomposition e{s.eigenvalues(), s.eigenvectors()};
    return symmetrize(reconstruct(e, apply_checked(e.values, f)));
}

SymMatrix spectral_apply(const SymMatrix& s, const ScalarFunction& f) {
    const auto e = eig_sym(s);
    return symmetrize(reconstruct(e, apply_checked(e.values, f)));
}

SpdMatrix sym_exp(const SymMatrix& s) {
    return SpdMatrix(spectral_apply(s, [](double x) { return std::exp(x); }));
}

Definiteness spd_classify(const SymMatrix& s, double tol) {
    const auto e = eig_sym(s);
    const double lmin = e.values[s.dim() - 1];
    if (lmin > tol) return Definiteness::positive_definite;
    if (lmin >= -tol) return Definiteness::positive_semidefinite;
    return Definiteness::indefinite;
}

std::vector<SymMatrix> sym_basis(int n) {
    std::vector<SymMatrix> out;
    out.reserve(static_cast<size_t>(n * (n + 1) / 2));
    for (int i = 0; i < n; ++i) out.push_back(SymMatrix::unit(n, i, i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.push_back(SymMatrix::unit(n, i, j));
    return out;
}

int sym_basis_index(int n, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 0 || j >= n) fail(ErrorCode::domain, "basis index out of range");
    if (i == j) return i;
    // Off-diagonals of rows before i, then offset within row i.
    int idx = n;
    for (int r = 0; r < i; ++r) idx += n - r - 1;
    return idx + (j - i - 1);
}

Vector sym_coordinates(const SymMatrix& s) {
    const int n = s.dim();
    Vector c(n * (n + 1) / 2);
    int k = 0;
    for (int i = 0; i < n; ++i) c[k++] = s(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) c[k++] = s(i, j);
    return c;
}

SymMatrix sym_from_coordinates(int n, const Vector& c) {
    if (c.size() != n * (n + 1) / 2) fail(ErrorCode::domain, "coordinate vector has wrong length");
    Matrix m = Matrix::Zero(n, n);
    int k = 0;
    for (int i = 0; i < n; ++i) m(i, i) = c[k++];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = c[k++];
    return symmetrize(m);
}

}  // namespace infogeo
