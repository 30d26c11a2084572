#include "infogeo/oracle.hpp"

#include "infogeo/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace infogeo {

namespace {

constexpr double kMarginFloor = 1e-10;

// ∂/∂t log f(pt + t·v, x) at t = 0 by central differences on a halving step
// ladder h_k = 1e-5·2^{-k}. Perturbed points are built once per level.
class ScoreEvaluator {
public:
    static constexpr int kLevels = 36;

    ScoreEvaluator(const FamilyParams& fp, const Point& pt, const Tangent& v) : fp_(fp) {
        plus_.reserve(kLevels);
        minus_.reserve(kLevels);
        for (int k = 0; k < kLevels; ++k) {
            const double h = step(k);
            try {
                plus_.push_back(displace(pt, v, h));
                minus_.push_back(displace(pt, v, -h));
            } catch (const Error&) {
                fail(ErrorCode::step_failure, "score step leaves the SPD cone");
            }
        }
    }

    static double step(int k) { return std::ldexp(1e-5, -k); }

    double operator()(const Vector& x, double margin) const {
        int k = 0;
        while (k + 2 < kLevels && step(k) > 1e-3 * margin) ++k;
        double prev = std::numeric_limits<double>::quiet_NaN();
        for (int refinements = 0; k + 1 < kLevels; ++k, ++refinements) {
            const double d1 = central(k, x);
            const double d2 = central(k + 1, x);
            if (!std::isfinite(d1) || !std::isfinite(d2)) continue;
            const double rich = (4.0 * d2 - d1) / 3.0;
            if (std::abs(d1 - d2) <= 1e-6 * std::max(std::abs(d2), 1.0) || refinements >= 6) return rich;
            prev = rich;
        }
        if (std::isfinite(prev)) return prev;
        fail(ErrorCode::numerical_failure, "score differencing failed at a quadrature node");
    }

private:
    double central(int k, const Vector& x) const {
        const double lp = log_density(fp_, plus_[static_cast<size_t>(k)], x);
        const double lm = log_density(fp_, minus_[static_cast<size_t>(k)], x);
        return (lp - lm) / (2.0 * step(k));
    }

    FamilyParams fp_;
    std::vector<Point> plus_, minus_;
};

}  // namespace

std::string_view to_string(IntegralMethod m) noexcept {
    return m == IntegralMethod::grid ? "grid" : "monte-carlo";
}

IntegralEstimate quad_integral(const FamilyParams& fp, const Point& pt, const std::function<double(const Vector&)>& g,
                               int resolution, Execution mode) {
    auto f = [&](const QuadratureNode& node) { return g(node.x); };
    const double coarse = integrate(make_grid(fp, pt, resolution), f, mode);
    const double fine = integrate(make_grid(fp, pt, 2 * resolution), f, mode);
    return {fine, std::abs(fine - coarse), IntegralMethod::grid, std::nullopt};
}

Matrix numeric_covariance(const FamilyParams& fp, const Point& pt, int resolution) {
    const int n = pt.dim();
    Matrix cov(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cov(i, j) = cov(j, i) =
                quad_integral(fp, pt,
                              [&](const Vector& x) {
                                  return density(fp, pt, x) * (x[i] - pt.u[i]) * (x[j] - pt.u[j]);
                              },
                              resolution)
                    .value;
        }
    return cov;
}

FisherEstimate numeric_fisher(const FamilyParams& fp, const Point& pt, const Tangent& a, const Tangent& b,
                              int resolution, Execution mode) {
    const ScoreEvaluator sa(fp, pt, a);
    const ScoreEvaluator sb(fp, pt, b);
    const bool same = (a - b).max_abs() == 0.0;
    auto f = [&](const QuadratureNode& node) {
        if (node.margin < kMarginFloor) return 0.0;
        const double l = log_density(fp, pt, node.x);
        if (!std::isfinite(l)) return 0.0;
        const double da = sa(node.x, node.margin);
        const double db = same ? da : sb(node.x, node.margin);
        return std::exp(l) * da * db;
    };
    const double coarse = integrate(make_grid(fp, pt, resolution), f, mode);
    const double fine = integrate(make_grid(fp, pt, 2 * resolution), f, mode);
    FisherEstimate out;
    out.estimate = {fine, std::abs(fine - coarse), IntegralMethod::grid, std::nullopt};
    out.coarse = coarse;
    out.growth = coarse != 0.0 ? std::abs(fine) / std::abs(coarse) : std::numeric_limits<double>::infinity();
    out.divergent = out.growth >= 10.0;
    return out;
}

IntegralEstimate numeric_fisher_mc(const FamilyParams& fp, const Point& pt, const Tangent& a, const Tangent& b,
                                   int count, std::uint64_t seed) {
    if (fp.n > 4) fail(ErrorCode::domain, "Monte-Carlo Fisher oracle supports n <= 4");
    if (count < 2) fail(ErrorCode::domain, "need at least two samples");
    const ScoreEvaluator sa(fp, pt, a);
    const ScoreEvaluator sb(fp, pt, b);
    const double radius = whitened_support_radius(fp, pt);
    const Matrix whiten = pt.D.sqrt();
    const auto xs = sample(fp, pt, count, seed);
    double mean = 0.0, m2 = 0.0;
    for (int i = 0; i < count; ++i) {
        const Vector& x = xs[static_cast<size_t>(i)];
        double margin = 1.0;
        if (std::isfinite(radius)) {
            const double rho = (whiten * (x - pt.u)).norm() / radius;
            margin = std::max(0.0, 1.0 - rho * rho);
        }
        const double v = margin < kMarginFloor ? 0.0 : sa(x, margin) * sb(x, margin);
        // Welford update.
        const double delta = v - mean;
        mean += delta / (i + 1);
        m2 += delta * (v - mean);
    }
    const double se = std::sqrt(m2 / (count - 1) / count);
    return {mean, se, IntegralMethod::monte_carlo, seed};
}

double fd_entropy_hessian(const FamilyParams& fp, double q, const SpdMatrix& D, const SymMatrix& X,
                          const SymMatrix& Y, double h, EntropyKind kind) {
    if (!(h > 0.0)) fail(ErrorCode::domain, "step must be positive");
    auto S = [&](double t, double s) {
        SymMatrix M = D.sym() + t * X + s * Y;
        if (spd_classify(M, 0.0) != Definiteness::positive_definite)
            fail(ErrorCode::step_failure, "perturbed D left the SPD cone; reduce h");
        const SpdMatrix P(M);
        if (q == 1.0) return shannon_entropy(fp, P).value;
        return kind == EntropyKind::renyi ? renyi_entropy(fp, P, q).value : tsallis_entropy(fp, P, q).value;
    };
    return (S(h, h) - S(h, -h) - S(-h, h) + S(-h, -h)) / (4.0 * h * h);
}

Matrix fd_metric_components(const MetricParams& mp, const Chart& chart, const Vector& coords) {
    const Point pt = chart.from_coords(coords);
    const int dim = chart.dim();
    std::vector<Tangent> basis;
    basis.reserve(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k) basis.push_back(chart.basis(k));
    Matrix G(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = i; j < dim; ++j)
            G(i, j) = G(j, i) = unified_eval(mp, pt, basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
    return G;
}

Tensor3 fd_christoffels(const MetricParams& mp, const Chart& chart, const Vector& coords, double h) {
    const int dim = chart.dim();
    // dG[k] = ∂_k G
    std::vector<Matrix> dG(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k) {
        Vector cp = coords, cm = coords;
        cp[k] += h;
        cm[k] -= h;
        try {
            dG[static_cast<size_t>(k)] =
                (fd_metric_components(mp, chart, cp) - fd_metric_components(mp, chart, cm)) / (2.0 * h);
        } catch (const Error&) {
            fail(ErrorCode::step_failure, "chart perturbation left the SPD cone; reduce h");
        }
    }
    const Matrix Ginv = fd_metric_components(mp, chart, coords).inverse();
    Tensor3 gamma(dim);
    for (int a = 0; a < dim; ++a)
        for (int b = a; b < dim; ++b) {
            Vector low(dim);  // Γ_{d,ab}
            for (int d = 0; d < dim; ++d)
                low[d] = 0.5 * (dG[static_cast<size_t>(a)](b, d) + dG[static_cast<size_t>(b)](a, d) -
                                dG[static_cast<size_t>(d)](a, b));
            const Vector up = Ginv * low;
            for (int c = 0; c < dim; ++c) gamma(c, a, b) = gamma(c, b, a) = up[c];
        }
    return gamma;
}

Tensor4 fd_riemann(const MetricParams& mp, const Chart& chart, const Vector& coords, double h) {
    const int dim = chart.dim();
    const Tensor3 g0 = fd_christoffels(mp, chart, coords, h);
    std::vector<Tensor3> dg;  // dg[a](d,b,c) = ∂_a Γ^d_bc
    dg.reserve(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) {
        Vector cp = coords, cm = coords;
        cp[a] += h;
        cm[a] -= h;
        const Tensor3 gp = fd_christoffels(mp, chart, cp, h);
        const Tensor3 gm = fd_christoffels(mp, chart, cm, h);
        Tensor3 d(dim);
        for (size_t i = 0; i < d.data.size(); ++i) d.data[i] = (gp.data[i] - gm.data[i]) / (2.0 * h);
        dg.push_back(std::move(d));
    }
    Tensor4 R(dim);
    for (int d = 0; d < dim; ++d)
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int c = 0; c < dim; ++c) {
                    double v = dg[static_cast<size_t>(a)](d, b, c) - dg[static_cast<size_t>(b)](d, a, c);
                    for (int e = 0; e < dim; ++e) v += g0(d, a, e) * g0(e, b, c) - g0(d, b, e) * g0(e, a, c);
                    R(d, a, b, c) = v;
                }
    return R;
}

Matrix fd_ricci(const Tensor4& R) {
    const int dim = R.dim;
    Matrix ric = Matrix::Zero(dim, dim);
    for (int b = 0; b < dim; ++b)
        for (int c = 0; c < dim; ++c)
            for (int a = 0; a < dim; ++a) ric(b, c) += R(a, a, b, c);
    return ric;
}

double fd_scalar(const MetricParams& mp, const Chart& chart, const Vector& coords, double h) {
    const Matrix ric = fd_ricci(fd_riemann(mp, chart, coords, h));
    const Matrix Ginv = fd_metric_components(mp, chart, coords).inverse();
    return (Ginv.cwiseProduct(ric)).sum();
}

double kubo_mori_integral(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y) {
    const int n = D.dim();
    auto integrand = [&](double t) {
        const Matrix M = D.matrix() + t * Matrix::Identity(n, n);
        const Eigen::LDLT<Matrix> ldlt(M);
        return (ldlt.solve(X.matrix()) * ldlt.solve(Y.matrix())).trace();
    };
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13, &err);
    return v;
}

double max_entropy_check(int n, double q, const SpdMatrix& D, double competitor_p) {
    const FamilyParams best(n, q);
    const FamilyParams other(n, competitor_p);
    if (other.p < 1.0 && !(1.0 / (1.0 - other.p) - 0.5 * n > 1.0))
        fail(ErrorCode::domain, "competitor has no covariance");
    auto entropy = [&](const FamilyParams& fp) {
        return q == 1.0 ? shannon_entropy(fp, D).value : renyi_entropy(fp, D, q).value;
    };
    return entropy(best) - entropy(other);
}

}  // namespace infogeo
