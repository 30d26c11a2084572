#include "infogeo/metric.hpp"

#include "infogeo/error.hpp"
#include "infogeo/quadrature.hpp"
#include "infogeo/special.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace infogeo {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dims(const Point& pt, const Tangent& a, const Tangent& b) {
    if (a.dim() != pt.dim() || b.dim() != pt.dim())
        fail(ErrorCode::domain, "tangent and point dimensions differ");
}

// Tr(D⁻¹XD⁻¹Y), Tr(D⁻¹X), Tr(D⁻¹Y)
struct TracePieces {
    double tr_xy, tr_x, tr_y;
};

TracePieces trace_pieces(const Matrix& dinv, const SymMatrix& X, const SymMatrix& Y) {
    const Matrix dx = dinv * X.matrix();
    const Matrix dy = dinv * Y.matrix();
    return {(dx * dy).trace(), dx.trace(), dy.trace()};
}

}  // namespace

Tangent::Tangent(SymMatrix X_, Vector x_) : X(std::move(X_)), x(std::move(x_)) {
    if (x.size() != X.dim()) fail(ErrorCode::domain, "tangent parts have inconsistent dimensions");
}

Tangent::Tangent(SymMatrix X_) : X(std::move(X_)), x(Vector::Zero(X.dim())) {}

Tangent Tangent::zero(int n) { return Tangent(SymMatrix(n)); }

double Tangent::max_abs() const {
    return std::max(X.max_abs(), x.size() ? x.cwiseAbs().maxCoeff() : 0.0);
}

Tangent& Tangent::operator+=(const Tangent& o) {
    X += o.X;
    x += o.x;
    return *this;
}

Tangent& Tangent::operator-=(const Tangent& o) {
    X -= o.X;
    x -= o.x;
    return *this;
}

Tangent& Tangent::operator*=(double s) {
    X *= s;
    x *= s;
    return *this;
}

Point displace(const Point& pt, const Tangent& v, double t) {
    if (v.dim() != pt.dim()) fail(ErrorCode::domain, "tangent and point dimensions differ");
    return Point(SpdMatrix(pt.D.sym() + t * v.X), pt.u + t * v.x);
}

std::string_view to_string(Signature s) noexcept {
    switch (s) {
        case Signature::riemannian: return "riemannian";
        case Signature::semi_riemannian: return "semi-riemannian";
        case Signature::degenerate: return "degenerate";
    }
    return "unknown";
}

Signature signature(const MetricParams& mp, int n) {
    const double k = 1.0 + 2.0 * n * mp.alpha;
    if (std::abs(k) <= 1e-12) return Signature::degenerate;
    if (k > 0.0 && mp.beta >= 0.0 && mp.scale > 0.0) return Signature::riemannian;
    return Signature::semi_riemannian;
}

void require_nondegenerate(const MetricParams& mp, int n) {
    if (signature(mp, n) == Signature::degenerate) {
        std::ostringstream os;
        os << "metric is degenerate at alpha = -1/(2n) = " << -0.5 / n;
        fail(ErrorCode::degenerate_metric, os.str());
    }
}

double unified_eval(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b) {
    check_dims(pt, a, b);
    const auto t = trace_pieces(pt.D.inverse(), a.X, b.X);
    const double vec = a.x.dot(pt.D.matrix() * b.x);
    return mp.scale * (0.5 * t.tr_xy + mp.alpha * t.tr_x * t.tr_y + mp.beta * vec);
}

std::string metric_name(const MetricSpec& spec) {
    return std::visit(overloaded{
                          [](const metrics::Renyi&) { return std::string("renyi"); },
                          [](const metrics::Tsallis&) { return std::string("tsallis"); },
                          [](const metrics::Fisher&) { return std::string("fisher"); },
                          [](const metrics::CalvoOller&) { return std::string("co"); },
                          [](const metrics::LMR&) { return std::string("lmr"); },
                          [](const metrics::Unified&) { return std::string("unified"); },
                          [](const metrics::KuboMori&) { return std::string("km"); },
                          [](const metrics::Largest&) { return std::string("largest"); },
                      },
                      spec);
}

double tsallis_form_constant(const FamilyParams& fp, double q) {
    const double bound = power_integral_lower_bound(fp);
    if (!(q > bound)) {
        std::ostringstream os;
        os << "Tsallis form undefined: q must exceed " << bound;
        fail(ErrorCode::domain, os.str());
    }
    const double half_n = 0.5 * fp.n;
    const double pi = std::numbers::pi;
    double log_c;
    if (fp.gaussian()) {
        log_c = half_n * (1.0 - q) * std::log(2.0 * pi) - half_n * std::log(q);
    } else {
        const double denom = 2.0 * fp.p - fp.n * (1.0 - fp.p);
        const double a = std::abs(fp.p - 1.0) / denom;
        const double lead = half_n * (q - 1.0) * std::log(a / pi);
        if (fp.compact()) {
            const double m = 1.0 / (fp.p - 1.0);
            log_c = lead + q * (log_gamma(fp.p * m + half_n) - log_gamma(fp.p * m)) + log_gamma(q * m + 1.0) -
                    log_gamma(q * m + 1.0 + half_n);
        } else {
            const double k = 1.0 / (1.0 - fp.p);
            log_c = lead + q * (log_gamma(k) - log_gamma(k - half_n)) + log_gamma(q * k - half_n) -
                    log_gamma(q * k);
        }
    }
    return 0.5 * std::exp(log_c);
}

double named_eval(const MetricSpec& spec, const Point& pt, const Tangent& a, const Tangent& b) {
    check_dims(pt, a, b);
    const int n = pt.dim();
    const Matrix& dinv = pt.D.inverse();
    const double vec = a.x.dot(pt.D.matrix() * b.x);
    return std::visit(
        overloaded{
            [&](const metrics::Renyi&) { return 0.5 * trace_pieces(dinv, a.X, b.X).tr_xy; },
            [&](const metrics::Tsallis& s) {
                const FamilyParams fp(n, s.p);
                const auto t = trace_pieces(dinv, a.X, b.X);
                if (s.q == 1.0) return 0.5 * t.tr_xy;
                const double c = tsallis_form_constant(fp, s.q);
                return c * std::exp(0.5 * (s.q - 1.0) * pt.D.log_det()) *
                       (t.tr_xy - 0.5 * (s.q - 1.0) * t.tr_x * t.tr_y);
            },
            [&](const metrics::Fisher& s) {
                const FamilyParams fp(n, s.p);
                if (s.p >= 2.0)
                    fail(ErrorCode::nonexistence, "the Fisher information does not exist for p >= 2");
                const double p = s.p;
                const auto t = trace_pieces(dinv, a.X, b.X);
                return t.tr_xy / (2.0 * (2.0 - p)) + (p - 1.0) / (4.0 * (2.0 - p)) * t.tr_x * t.tr_y +
                       (2.0 + n * (p - 1.0)) / ((2.0 * p + n * (p - 1.0)) * (2.0 - p)) * vec;
            },
            [&](const metrics::CalvoOller& s) {
                return 0.5 * trace_pieces(dinv, a.X, b.X).tr_xy + s.beta * vec;
            },
            [&](const metrics::LMR&) {
                const auto t = trace_pieces(dinv, a.X, b.X);
                return t.tr_xy - t.tr_x * t.tr_y / (n + 1.0) + 0.5 * vec;
            },
            [&](const metrics::Unified& s) { return unified_eval(s.params, pt, a, b); },
            [&](const metrics::KuboMori&) { return kubo_mori_eval(pt.D, a.X, b.X); },
            [&](const metrics::Largest&) { return largest_eval(pt.D, a.X, b.X); },
        },
        spec);
}

std::optional<MetricParams> as_unified(const MetricSpec& spec, int n) {
    return std::visit(
        overloaded{
            [](const metrics::Renyi&) -> std::optional<MetricParams> { return MetricParams{0.0, 0.0, 1.0}; },
            [](const metrics::Tsallis& s) -> std::optional<MetricParams> {
                if (s.q == 1.0) return MetricParams{0.0, 0.0, 1.0};
                return std::nullopt;
            },
            [n](const metrics::Fisher& s) -> std::optional<MetricParams> {
                const double p = s.p;
                if (!(p < 2.0) || !(p > n / (n + 2.0))) return std::nullopt;
                return MetricParams{(p - 1.0) / 4.0, (2.0 + n * (p - 1.0)) / (2.0 * p + n * (p - 1.0)),
                                    1.0 / (2.0 - p)};
            },
            [](const metrics::CalvoOller& s) -> std::optional<MetricParams> {
                return MetricParams{0.0, s.beta, 1.0};
            },
            [n](const metrics::LMR&) -> std::optional<MetricParams> {
                return MetricParams{-1.0 / (2.0 * (n + 1.0)), 0.25, 2.0};
            },
            [](const metrics::Unified& s) -> std::optional<MetricParams> { return s.params; },
            [](const metrics::KuboMori&) -> std::optional<MetricParams> { return std::nullopt; },
            [](const metrics::Largest&) -> std::optional<MetricParams> { return std::nullopt; },
        },
        spec);
}

CsiszarPhi CsiszarPhi::alpha_relative(double a) {
    if (!(std::abs(a) < 1.0)) fail(ErrorCode::domain, "alpha-relative entropy needs |alpha| < 1");
    return {Kind::alpha_relative, a};
}

double CsiszarPhi::of_log_ratio(double d) const {
    switch (kind) {
        case Kind::kl: return -d;
        case Kind::hellinger: {
            const double r = -std::expm1(0.5 * d);
            return r * r;
        }
        case Kind::alpha_relative:
            return -4.0 / (1.0 - alpha * alpha) * std::expm1(0.5 * (1.0 + alpha) * d);
    }
    return 0.0;
}

namespace {

// f₁·expm1(x) without 0·∞ when f₁ underflows and x is large.
double scaled_expm1(double log_f1, double x) {
    if (x < 50.0) return std::exp(log_f1) * std::expm1(x);
    return std::exp(log_f1 + x) - std::exp(log_f1);
}

}  // namespace

double CsiszarPhi::weighted(double log_f1, double log_f2) const {
    const double d = log_f2 - log_f1;
    switch (kind) {
        case Kind::kl: return std::exp(log_f1) * -d;
        case Kind::hellinger: {
            if (d < 100.0) {
                const double r = std::expm1(0.5 * d);
                return std::exp(log_f1) * r * r;
            }
            const double r = std::exp(0.5 * log_f1) - std::exp(0.5 * log_f2);
            return r * r;
        }
        case Kind::alpha_relative:
            return -4.0 / (1.0 - alpha * alpha) * scaled_expm1(log_f1, 0.5 * (1.0 + alpha) * d);
    }
    return 0.0;
}

double CsiszarPhi::operator()(double ratio) const {
    if (!(ratio >= 0.0)) fail(ErrorCode::domain, "phi argument must be non-negative");
    return of_log_ratio(std::log(ratio));
}

double CsiszarPhi::second_derivative_at_one() const {
    switch (kind) {
        case Kind::kl: return 1.0;
        case Kind::hellinger: return 0.5;
        case Kind::alpha_relative: return 1.0;
    }
    return 0.0;
}

std::string CsiszarPhi::name() const {
    switch (kind) {
        case Kind::kl: return "kl";
        case Kind::hellinger: return "hellinger";
        case Kind::alpha_relative: {
            std::ostringstream os;
            os << "alpha-relative(" << alpha << ")";
            return os.str();
        }
    }
    return "unknown";
}

namespace {

double csiszar_on_grid(const CsiszarPhi& phi, const FamilyParams& fp, const QuadratureGrid& grid,
                       const Point& pt1, const Point& pt2) {
    return integrate(grid, [&](const QuadratureNode& node) {
        const double l1 = log_density(fp, pt1, node.x);
        if (!std::isfinite(l1)) return 0.0;
        const double l2 = log_density(fp, pt2, node.x);
        return phi.weighted(l1, l2);
    });
}

}  // namespace

double csiszar_divergence(const CsiszarPhi& phi, const FamilyParams& fp, const Point& pt1, const Point& pt2,
                          int resolution) {
    const auto grid = make_grid(fp, pt1, resolution);
    return csiszar_on_grid(phi, fp, grid, pt1, pt2);
}

double csiszar_induced_form(const CsiszarPhi& phi, const FamilyParams& fp, const Point& pt, const Tangent& a,
                            const Tangent& b, double h, int resolution) {
    if (fp.p >= 2.0) fail(ErrorCode::nonexistence, "the induced form needs p < 2");
    if (!(h > 0.0)) fail(ErrorCode::domain, "step must be positive");
    const auto grid = make_grid(fp, pt, resolution);
    auto shifted = [&](double t, double s) {
        try {
            return displace(displace(pt, a, t), b, s);
        } catch (const Error&) {
            fail(ErrorCode::step_failure, "perturbed D left the SPD cone; reduce h");
        }
    };
    auto mixed = [&](double step) {
        const double hpp = csiszar_on_grid(phi, fp, grid, pt, shifted(step, step));
        const double hpm = csiszar_on_grid(phi, fp, grid, pt, shifted(step, -step));
        const double hmp = csiszar_on_grid(phi, fp, grid, pt, shifted(-step, step));
        const double hmm = csiszar_on_grid(phi, fp, grid, pt, shifted(-step, -step));
        return (hpp - hpm - hmp + hmm) / (4.0 * step * step);
    };
    const double coarse = mixed(h);
    const double fine = mixed(0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double kubo_mori_eval(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y) {
    if (X.dim() != D.dim() || Y.dim() != D.dim()) fail(ErrorCode::domain, "dimension mismatch");
    const Matrix& Q = D.eigenvectors();
    const Vector& lam = D.eigenvalues();
    const Matrix xe = Q.transpose() * X.matrix() * Q;
    const Matrix ye = Q.transpose() * Y.matrix() * Q;
    double sum = 0.0;
    for (int i = 0; i < D.dim(); ++i) {
        for (int j = 0; j < D.dim(); ++j) {
            const double lo = std::min(lam[i], lam[j]), hi = std::max(lam[i], lam[j]);
            const double d = (hi - lo) / lo;
            const double k = d == 0.0 ? 1.0 / lo : std::log1p(d) / (d * lo);
            sum += k * xe(i, j) * ye(i, j);
        }
    }
    return sum;
}

double largest_eval(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y) {
    if (X.dim() != D.dim() || Y.dim() != D.dim()) fail(ErrorCode::domain, "dimension mismatch");
    return (D.inv_sqrt() * X.matrix() * D.inverse() * Y.matrix() * D.sqrt()).trace();
}

}  // namespace infogeo
