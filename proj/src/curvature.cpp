#include "infogeo/curvature.hpp"

#include "infogeo/chart.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/special.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace infogeo {

namespace {

// u ⊙ v = u vᵀ + v uᵀ
Matrix odot(const Vector& u, const Vector& v) {
    const Matrix m = u * v.transpose();
    return m + m.transpose();
}

double coupling_denominator(const MetricParams& mp, int n) {
    require_nondegenerate(mp, n);
    return 1.0 + 2.0 * n * mp.alpha;
}

}  // namespace

Tangent riemann(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b, const Tangent& c) {
    const int n = pt.dim();
    const double k = coupling_denominator(mp, n);
    const double beta = mp.beta;
    const double ab = mp.alpha * beta / k;
    const Matrix& D = pt.D.matrix();
    const Matrix& Di = pt.D.inverse();
    const Matrix& X = a.X.matrix();
    const Matrix& Y = b.X.matrix();
    const Matrix& Z = c.X.matrix();
    const Vector &x = a.x, &y = b.x, &z = c.x;

    const Matrix m1 = 0.25 * (Z * Di * X * Di * Y + Y * Di * X * Di * Z - X * Di * Y * Di * Z - Z * Di * Y * Di * X);
    const Matrix m2 = 0.25 * beta *
                      (odot(Y * x, D * z) - odot(X * y, D * z) + odot(D * y, Z * x) - odot(D * x, Z * y));
    const Matrix m3 = ab * ((X * y - Y * x).dot(z) + x.dot(Z * y) - y.dot(Z * x)) * D;

    const Vector v1 = 0.25 * (Di * (Y * Di * X - X * Di * Y) * z + Di * Z * Di * (X * y - Y * x));
    const Vector v2 = 0.25 * beta * (odot(z, x) * D * y - odot(z, y) * D * x);
    const Vector v3 = ab * (y.dot(D * z) * x - x.dot(D * z) * y);

    return Tangent(symmetrize(m1 + m2 + m3), v1 + v2 + v3);
}

Tangent connection_derivative(const MetricParams& mp, const Point& pt, const Tangent& z, const Tangent& a,
                              const Tangent& b) {
    const int n = pt.dim();
    const double c = 2.0 * mp.alpha * mp.beta / coupling_denominator(mp, n);
    const Matrix& D = pt.D.matrix();
    const Matrix& Di = pt.D.inverse();
    const Matrix& Z = z.X.matrix();
    const Matrix& X = a.X.matrix();
    const Matrix& Y = b.X.matrix();
    const Matrix xy = odot(a.x, b.x);
    const Matrix m = 0.5 * (X * Di * Z * Di * Y + Y * Di * Z * Di * X) - 0.5 * mp.beta * (Z * xy * D + D * xy * Z) +
                     c * (a.x.dot(Z * b.x) * D + a.x.dot(D * b.x) * Z);
    const Vector v = -0.5 * Di * Z * Di * (X * b.x + Y * a.x);
    return Tangent(symmetrize(m), v);
}

Tangent riemann_from_connection(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b,
                                const Tangent& c) {
    return connection_derivative(mp, pt, a, b, c) - connection_derivative(mp, pt, b, a, c) +
           covariant_derivative(mp, pt, a, covariant_derivative(mp, pt, b, c)) -
           covariant_derivative(mp, pt, b, covariant_derivative(mp, pt, a, c));
}

double ricci(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b) {
    const int n = pt.dim();
    const double k = coupling_denominator(mp, n);
    const Matrix& Di = pt.D.inverse();
    const Matrix dx = Di * a.X.matrix();
    const Matrix dy = Di * b.X.matrix();
    return -(n + 1.0) / 4.0 * (dx * dy).trace() + 0.25 * dx.trace() * dy.trace() -
           mp.beta / (2.0 * k) * a.x.dot(pt.D.matrix() * b.x);
}

Tangent ricci_operator(const MetricParams& mp, const Point& pt, const Tangent& a) {
    const int n = pt.dim();
    const double k = coupling_denominator(mp, n);
    const double c = (1.0 + 2.0 * (n + 1.0) * mp.alpha) / (2.0 * k);
    const double tr = (pt.D.inverse() * a.X.matrix()).trace();
    const Matrix m = -(n + 1.0) / 2.0 * a.X.matrix() + c * tr * pt.D.matrix();
    return (1.0 / mp.scale) * Tangent(symmetrize(m), -a.x / (2.0 * k));
}

double scalar_full(const MetricParams& mp, int n) {
    const double k = coupling_denominator(mp, n);
    return -n * (n + 1.0) * (2.0 * (n + 2.0) * (n - 1.0) * mp.alpha + n + 1.0) / (4.0 * k) / mp.scale;
}

double scalar_special(const MetricParams& mp, int n) {
    const double k = coupling_denominator(mp, n);
    return -n * (2.0 * (n - 1.0) * (n + 1.0) * (n + 2.0) * mp.alpha + n * n + 2.0 * n - 1.0) / (4.0 * k) / mp.scale;
}

double scalar_from_trace(const MetricParams& mp, const Point& pt, bool special) {
    const Chart chart(pt.dim());
    const int count = special ? chart.matrix_dim() : chart.dim();
    double s = 0.0;
    for (int k = 0; k < count; ++k) s += chart.tangent_coords(ricci_operator(mp, pt, chart.basis(k)))[k];
    return s;
}

double fisher_scalar_extended(int n, double p) {
    if (n < 1) fail(ErrorCode::domain, "dimension n must be at least 1");
    if (!(p > n / (n + 2.0)) || !(p < 2.0)) {
        std::ostringstream os;
        os << "p must lie in (" << n / (n + 2.0) << ", 2), got " << p;
        fail(ErrorCode::domain, os.str());
    }
    return -n * (n + 1.0) * (2.0 - p) / (4.0 * (2.0 + n * (p - 1.0))) *
           ((n + 2.0) * (n - 1.0) * (p - 1.0) + 2.0 * (n + 1.0));
}

double ball_volume(int n, double scal, double r) {
    if (n < 1) fail(ErrorCode::domain, "dimension n must be at least 1");
    if (!(r >= 0.0)) fail(ErrorCode::domain, "radius must be non-negative");
    const double unit = std::exp(0.5 * n * std::log(std::numbers::pi) - log_gamma(0.5 * n + 1.0));
    return std::pow(r, n) * unit * (1.0 - scal * r * r / (6.0 * (n + 2.0)));
}

std::string_view to_string(CurvatureMethod m) noexcept {
    return m == CurvatureMethod::closed_form ? "closed-form" : "finite-difference";
}

CurvatureReport curvature_report(const MetricParams& mp, const Point& pt) {
    const Chart chart(pt.dim());
    const int dim = chart.dim();
    Matrix op(dim, dim);
    for (int k = 0; k < dim; ++k) op.col(k) = chart.tangent_coords(ricci_operator(mp, pt, chart.basis(k)));
    // R̃ is g-self-adjoint, so its spectrum is real.
    Eigen::EigenSolver<Matrix> es(op, false);
    std::vector<double> eig(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k) eig[static_cast<size_t>(k)] = es.eigenvalues()[k].real();
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return {pt, mp, scalar_full(mp, pt.dim()), std::move(eig), CurvatureMethod::closed_form};
}

}  // namespace infogeo
