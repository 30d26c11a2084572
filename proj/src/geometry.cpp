#include "infogeo/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace infogeo {

namespace {

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// 2αβ/(1+2nα), the coefficient of ⟨x,Dy⟩D in the matrix part of Γ.
double trace_coupling(const MetricParams& mp, int n) {
    require_nondegenerate(mp, n);
    return 2.0 * mp.alpha * mp.beta / (1.0 + 2.0 * n * mp.alpha);
}

void require_distance_metric(const MetricParams& mp, int n) {
    require_nondegenerate(mp, n);
    if (!(mp.beta > 0.0) || signature(mp, n) != Signature::riemannian)
        fail(ErrorCode::not_a_distance, "distance needs a Riemannian metric with beta > 0");
}

SymMatrix sym_log_ratio(const SpdMatrix& A0, const SpdMatrix& A1, Matrix* a0_sqrt = nullptr) {
    if (A0.dim() != A1.dim()) fail(ErrorCode::domain, "endpoint dimensions differ");
    const Matrix w = A0.inv_sqrt();
    if (a0_sqrt) *a0_sqrt = A0.sqrt();
    return SpdMatrix(symmetrize(w * A1.matrix() * w)).log();
}

// Q·diag(f(λ))·Qᵀ for a symmetric L.
Matrix exp_times(const SymMatrix& L, double t, bool with_l) {
    const auto e = eig_sym(L);
    Vector f(e.values.size());
    for (Eigen::Index i = 0; i < f.size(); ++i)
        f[i] = std::exp(t * e.values[i]) * (with_l ? e.values[i] : 1.0);
    return e.vectors * f.asDiagonal() * e.vectors.transpose();
}

}  // namespace

Tangent covariant_derivative(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b) {
    const int n = pt.dim();
    if (a.dim() != n || b.dim() != n) fail(ErrorCode::domain, "tangent and point dimensions differ");
    const double c = trace_coupling(mp, n);
    const Matrix& D = pt.D.matrix();
    const Matrix& dinv = pt.D.inverse();
    const Matrix& X = a.X.matrix();
    const Matrix& Y = b.X.matrix();
    const Matrix xy = a.x * b.x.transpose();
    Matrix m = -0.5 * (X * dinv * Y + Y * dinv * X) - 0.5 * mp.beta * D * (xy + xy.transpose()) * D +
               c * a.x.dot(D * b.x) * D;
    Vector v = 0.5 * dinv * (X * b.x + Y * a.x);
    return Tangent(symmetrize(m), std::move(v));
}

double metric_derivative(const MetricParams& mp, const Point& pt, const Tangent& z, const Tangent& a,
                         const Tangent& b) {
    const Matrix& dinv = pt.D.inverse();
    const Matrix dz = dinv * z.X.matrix();
    const Matrix dx = dinv * a.X.matrix();
    const Matrix dy = dinv * b.X.matrix();
    const double tr = -0.5 * (dz * dx * dy).trace() - 0.5 * (dx * dz * dy).trace();
    const double al = -mp.alpha * ((dz * dx).trace() * dy.trace() + dx.trace() * (dz * dy).trace());
    const double ve = mp.beta * a.x.dot(z.X.matrix() * b.x);
    return mp.scale * (tr + al + ve);
}

StateDerivative geodesic_rhs(const MetricParams& mp, const GeodesicState& s) {
    return {s.vel, -covariant_derivative(mp, s.pt, s.vel, s.vel)};
}

GeodesicTrace geodesic_ivp(const MetricParams& mp, const GeodesicState& start, double t_end, int steps) {
    if (steps < 1) fail(ErrorCode::domain, "step count must be at least 1");
    if (!std::isfinite(t_end)) fail(ErrorCode::domain, "t_end must be finite");
    require_nondegenerate(mp, start.pt.dim());
    const double h = t_end / steps;

    GeodesicTrace trace;
    trace.mp = mp;
    trace.times.reserve(static_cast<size_t>(steps) + 1);
    trace.states.reserve(static_cast<size_t>(steps) + 1);
    trace.times.push_back(0.0);
    trace.states.push_back(start);

    auto advance = [&](const GeodesicState& s, const StateDerivative& k, double dt) {
        return GeodesicState{displace(s.pt, k.point_rate, dt), s.vel + dt * k.velocity_rate};
    };

    for (int i = 0; i < steps; ++i) {
        const GeodesicState& s = trace.states.back();
        try {
            const auto k1 = geodesic_rhs(mp, s);
            const auto k2 = geodesic_rhs(mp, advance(s, k1, 0.5 * h));
            const auto k3 = geodesic_rhs(mp, advance(s, k2, 0.5 * h));
            const auto k4 = geodesic_rhs(mp, advance(s, k3, h));
            const Tangent dp = (h / 6.0) * (k1.point_rate + 2.0 * k2.point_rate + 2.0 * k3.point_rate + k4.point_rate);
            const Tangent dv = (h / 6.0) * (k1.velocity_rate + 2.0 * k2.velocity_rate + 2.0 * k3.velocity_rate +
                                            k4.velocity_rate);
            const SymMatrix next_d = s.pt.D.sym() + dp.X;
            if (spd_classify(next_d, 1e-12) != Definiteness::positive_definite)
                fail(ErrorCode::step_failure, "D left the SPD cone");
            GeodesicState next{Point(SpdMatrix(next_d), s.pt.u + dp.x), s.vel + dv};
            trace.times.push_back((i + 1) * h);
            trace.states.push_back(std::move(next));
        } catch (const Error& e) {
            std::ostringstream os;
            os << "geodesic integration failed at step " << i + 1 << " (t = " << i * h << "): " << e.what();
            throw GeodesicStepError(os.str(), s, i * h);
        }
    }
    return trace;
}

double path_length(const MetricParams& mp, const GeodesicTrace& trace) {
    const size_t m = trace.states.size();
    if (m != trace.times.size()) fail(ErrorCode::domain, "trace times and states differ in length");
    if (m < 2) return 0.0;
    std::vector<double> speed(m);
    for (size_t i = 0; i < m; ++i) {
        const auto& s = trace.states[i];
        const double g = unified_eval(mp, s.pt, s.vel, s.vel);
        if (g < -1e-14 * (1.0 + s.vel.max_abs()))
            fail(ErrorCode::not_a_distance, "negative squared speed: metric is not Riemannian");
        speed[i] = std::sqrt(std::max(0.0, g));
    }
    const size_t intervals = m - 1;
    const double h = (trace.times.back() - trace.times.front()) / intervals;
    if (intervals == 1) return 0.5 * h * (speed[0] + speed[1]);

    auto simpson = [&](size_t lo, size_t hi) {  // even number of intervals
        double s = speed[lo] + speed[hi];
        for (size_t i = lo + 1; i < hi; ++i) s += ((i - lo) % 2 ? 4.0 : 2.0) * speed[i];
        return s * h / 3.0;
    };
    if (intervals % 2 == 0) return simpson(0, intervals);
    // Odd: Simpson on the first intervals−3, Simpson's 3/8 on the last three.
    const size_t k = intervals - 3;
    const double tail =
        3.0 * h / 8.0 * (speed[k] + 3.0 * speed[k + 1] + 3.0 * speed[k + 2] + speed[k + 3]);
    return (k > 0 ? simpson(0, k) : 0.0) + tail;
}

std::string_view to_string(ClosedFamily f) noexcept {
    switch (f) {
        case ClosedFamily::n1: return "n1";
        case ClosedFamily::special_normal: return "special-normal";
        case ClosedFamily::alpha0_pullback: return "alpha0";
        case ClosedFamily::diagonal_family: return "diagonal";
    }
    return "unknown";
}

ClosedFamily ClosedGeodesic::family() const noexcept {
    return static_cast<ClosedFamily>(coeffs_.index());
}

Point ClosedGeodesic::at(double t) const {
    return std::visit(
        overloaded{
            [t](const N1Coefficients& c) {
                const double th = c.b * t + c.c;
                const double ch = std::cosh(th);
                Matrix D(1, 1);
                D(0, 0) = 2.0 / (c.a * c.a) * ch * ch;
                return Point(SpdMatrix(D), Vector::Constant(1, c.sign * (c.a * c.k * std::tanh(th) + c.d)));
            },
            [t](const SpecialNormalCoefficients& c) {
                return Point(SpdMatrix(symmetrize(c.d0_sqrt * exp_times(c.L, t, false) * c.d0_sqrt)), c.u);
            },
            [t](const Alpha0Coefficients& c) {
                return unembed_pi_beta(c.beta,
                                       SpdMatrix(symmetrize(c.s0_sqrt * exp_times(c.L, t, false) * c.s0_sqrt)));
            },
            [t](const DiagonalCoefficients& c) {
                const auto n = c.A.size();
                const Vector th = c.B * t + c.C;
                const Vector ch2 = th.array().cosh().square();
                const Vector tn = th.array().tanh();
                const Matrix D = 2.0 / c.A.squaredNorm() * c.U * ch2.asDiagonal() * c.U.transpose();
                const Vector u = std::sqrt(static_cast<double>(n) / c.beta) * c.U * tn.cwiseProduct(c.A) + c.offset;
                return Point(SpdMatrix(symmetrize(D)), u);
            },
        },
        coeffs_);
}

Tangent ClosedGeodesic::velocity(double t) const {
    return std::visit(
        overloaded{
            [t](const N1Coefficients& c) {
                const double th = c.b * t + c.c;
                const double sech = 1.0 / std::cosh(th);
                Matrix X(1, 1);
                X(0, 0) = 2.0 * c.b / (c.a * c.a) * std::sinh(2.0 * th);
                return Tangent(symmetrize(X), Vector::Constant(1, c.sign * c.a * c.k * c.b * sech * sech));
            },
            [t](const SpecialNormalCoefficients& c) {
                return Tangent(symmetrize(c.d0_sqrt * exp_times(c.L, t, true) * c.d0_sqrt));
            },
            [this, t](const Alpha0Coefficients& c) {
                const int n = static_cast<int>(c.s0_sqrt.rows()) - 1;
                const Matrix S = c.s0_sqrt * exp_times(c.L, t, false) * c.s0_sqrt;
                const Matrix Sd = c.s0_sqrt * exp_times(c.L, t, true) * c.s0_sqrt;
                const Vector u = S.col(n).head(n) / c.beta;
                const Vector ud = Sd.col(n).head(n) / c.beta;
                const Matrix dinv_dot = Sd.topLeftCorner(n, n) - c.beta * (ud * u.transpose() + u * ud.transpose());
                const Point pt = at(t);
                const Matrix& D = pt.D.matrix();
                return Tangent(symmetrize(-D * dinv_dot * D), ud);
            },
            [t](const DiagonalCoefficients& c) {
                const auto n = c.A.size();
                const Vector th = c.B * t + c.C;
                const Vector dd = c.B.cwiseProduct(Vector((2.0 * th).array().sinh()));
                const Vector sech2 = th.array().cosh().square().inverse();
                const Matrix X = 2.0 / c.A.squaredNorm() * c.U * dd.asDiagonal() * c.U.transpose();
                const Vector x = std::sqrt(static_cast<double>(n) / c.beta) * c.U *
                                 c.B.cwiseProduct(sech2).cwiseProduct(c.A);
                return Tangent(symmetrize(X), x);
            },
        },
        coeffs_);
}

double closed_ode_residual(const ClosedGeodesic& g, const MetricParams& mp, double t, double h) {
    // Five-point stencil: O(h⁴) truncation keeps the check well below 1e-7.
    const Tangent acc = (1.0 / (12.0 * h)) * (8.0 * (g.velocity(t + h) - g.velocity(t - h)) -
                                              (g.velocity(t + 2.0 * h) - g.velocity(t - 2.0 * h)));
    const Tangent v = g.velocity(t);
    return (acc + covariant_derivative(mp, g.at(t), v, v)).max_abs();
}

GeodesicTrace sample_closed(const ClosedGeodesic& g, const MetricParams& mp, double t0, double t1, int steps) {
    if (steps < 1) fail(ErrorCode::domain, "step count must be at least 1");
    GeodesicTrace trace;
    trace.mp = mp;
    for (int i = 0; i <= steps; ++i) {
        const double t = t0 + (t1 - t0) * i / steps;
        trace.times.push_back(t);
        trace.states.push_back(g.state(t));
    }
    return trace;
}

ClosedGeodesic geodesic_special_normal(const SpdMatrix& D0, const SpdMatrix& D1) {
    return geodesic_special_normal(D0, D1, Vector::Zero(D0.dim()));
}

ClosedGeodesic geodesic_special_normal(const SpdMatrix& D0, const SpdMatrix& D1, const Vector& u) {
    if (u.size() != D0.dim()) fail(ErrorCode::domain, "u has wrong dimension");
    Matrix d0_sqrt;
    SymMatrix L = sym_log_ratio(D0, D1, &d0_sqrt);
    return ClosedGeodesic(SpecialNormalCoefficients{std::move(d0_sqrt), std::move(L), u});
}

double distance_special_normal(const MetricParams& mp, const SpdMatrix& D0, const SpdMatrix& D1) {
    require_nondegenerate(mp, D0.dim());
    if (signature(mp, D0.dim()) != Signature::riemannian)
        fail(ErrorCode::not_a_distance, "distance needs a Riemannian metric");
    const SymMatrix L = sym_log_ratio(D0, D1);
    const double tr = L.trace();
    const double sq = 0.5 * (L.matrix() * L.matrix()).trace() + mp.alpha * tr * tr;
    return std::sqrt(std::max(0.0, sq) * mp.scale);
}

ClosedGeodesicResult geodesic_n1(const MetricParams& mp, const Point& p0, const Point& p1) {
    if (p0.dim() != 1 || p1.dim() != 1) fail(ErrorCode::domain, "geodesic_n1 needs n = 1");
    require_distance_metric(mp, 1);
    const double u0 = p0.u[0], u1 = p1.u[0];
    if (u0 == u1) {
        return {geodesic_special_normal(p0.D, p1.D, p0.u), distance_special_normal(mp, p0.D, p1.D)};
    }
    // Reflection u ↦ −u is an isometry; solve with u₁ > u₀.
    const double sign = u1 > u0 ? 1.0 : -1.0;
    const double v0 = sign * u0, v1 = sign * u1;
    const double D0 = p0.D.matrix()(0, 0), D1 = p1.D.matrix()(0, 0);
    const double alpha = mp.alpha, beta = mp.beta;

    const double x = (v1 - v0) * std::sqrt(D0 * beta / (2.0 + 4.0 * alpha));
    const double y = std::sqrt(D1 / D0);
    const double w = x * x * y * y + 1.0 - y * y;
    const double c = std::log((std::sqrt(w * w + 4.0 * x * x * std::pow(y, 4)) - w) / (2.0 * x * y * y));
    const double a = std::sqrt(2.0 / D0) * std::cosh(c);
    const double inner = y * (1.0 - x * std::exp(c));
    if (!(inner > 0.0)) fail(ErrorCode::numerical_failure, "endpoint recipe produced a non-positive log argument");
    const double b = -std::log(inner);
    const double k = std::sqrt((1.0 + 2.0 * alpha) / beta);
    const double d = v0 - a * k * std::tanh(c);

    ClosedGeodesic curve(N1Coefficients{a, b, c, d, k, sign});
    return {std::move(curve), std::sqrt(2.0 + 4.0 * alpha) * std::abs(b) * std::sqrt(mp.scale)};
}

SpdMatrix embed_pi_beta(double beta, const Point& pt) {
    if (!(beta > 0.0)) fail(ErrorCode::domain, "embedding needs beta > 0");
    const int n = pt.dim();
    Matrix S(n + 1, n + 1);
    S.topLeftCorner(n, n) = pt.D.inverse() + beta * pt.u * pt.u.transpose();
    S.topRightCorner(n, 1) = beta * pt.u;
    S.bottomLeftCorner(1, n) = beta * pt.u.transpose();
    S(n, n) = beta;
    try {
        return SpdMatrix(symmetrize(S));
    } catch (const Error& e) {
        fail(ErrorCode::numerical_failure, std::string("embedded matrix is not SPD: ") + e.what());
    }
}

Point unembed_pi_beta(double beta, const SpdMatrix& S) {
    if (!(beta > 0.0)) fail(ErrorCode::domain, "embedding needs beta > 0");
    const int n = S.dim() - 1;
    if (n < 1) fail(ErrorCode::domain, "embedded matrix must be at least 2x2");
    const Matrix& m = S.matrix();
    if (std::abs(m(n, n) - beta) > 1e-8 * beta) {
        std::ostringstream os;
        os << "matrix is outside the image of pi_beta (corner " << m(n, n) << " != beta " << beta << ")";
        fail(ErrorCode::nonexistence, os.str());
    }
    const Vector u = m.col(n).head(n) / beta;
    const SpdMatrix dinv(symmetrize(m.topLeftCorner(n, n) - beta * u * u.transpose()));
    return Point(SpdMatrix(symmetrize(dinv.inverse())), u);
}

double siegel_embedding_distance(double beta, const Point& p0, const Point& p1) {
    const SymMatrix L = sym_log_ratio(embed_pi_beta(beta, p0), embed_pi_beta(beta, p1));
    return std::sqrt(0.5 * (L.matrix() * L.matrix()).trace());
}

double alpha0_departure(double beta, const Point& p0, const Point& p1) {
    Matrix s0_sqrt;
    const SymMatrix L = sym_log_ratio(embed_pi_beta(beta, p0), embed_pi_beta(beta, p1), &s0_sqrt);
    const int n = p0.dim();
    double worst = 0.0;
    for (int i = 0; i <= 64; ++i) {
        const Matrix S = s0_sqrt * exp_times(L, i / 64.0, false) * s0_sqrt;
        worst = std::max(worst, std::abs(S(n, n) - beta) / beta);
    }
    return worst;
}

ClosedGeodesicResult geodesic_alpha0(double beta, const Point& p0, const Point& p1) {
    if (p0.dim() != p1.dim()) fail(ErrorCode::domain, "endpoint dimensions differ");
    const double dep = alpha0_departure(beta, p0, p1);
    if (dep > 1e-8) {
        std::ostringstream os;
        os << "embedded Siegel geodesic leaves the image of pi_beta (relative corner drift " << dep << ")";
        fail(ErrorCode::nonexistence, os.str());
    }
    Matrix s0_sqrt;
    SymMatrix L = sym_log_ratio(embed_pi_beta(beta, p0), embed_pi_beta(beta, p1), &s0_sqrt);
    ClosedGeodesic curve(Alpha0Coefficients{beta, std::move(s0_sqrt), std::move(L)});
    return {std::move(curve), siegel_embedding_distance(beta, p0, p1)};
}

ClosedGeodesic geodesic_diagonal_family(double beta, const Matrix& U, const Vector& A, const Vector& B,
                                        const Vector& C, const Vector& offset) {
    const auto n = A.size();
    if (!(beta > 0.0)) fail(ErrorCode::validation, "diagonal family needs beta > 0");
    if (n < 1 || U.rows() != n || U.cols() != n || B.size() != n || C.size() != n || offset.size() != n)
        fail(ErrorCode::validation, "diagonal family arguments have inconsistent sizes");
    if ((U.transpose() * U - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10)
        fail(ErrorCode::validation, "U must be orthogonal");
    if (A[0] == 0.0 || (A.array() - A[0]).abs().maxCoeff() > 1e-12 * std::abs(A[0]))
        fail(ErrorCode::validation, "A must have equal nonzero components");
    if ((U * A - A).cwiseAbs().maxCoeff() > 1e-10 * A.norm()) fail(ErrorCode::validation, "U must fix A");
    if ((B.array() != 0.0).count() > 1)
        fail(ErrorCode::validation,
             "B may have at most one nonzero entry (otherwise the curve violates the geodesic equation)");
    return ClosedGeodesic(DiagonalCoefficients{beta, U, A, B, C, offset});
}

double diagonal_family_distance(const Vector& B, double t0, double t1) {
    return std::abs(t1 - t0) * std::sqrt(2.0 * B.squaredNorm());
}

GeodesicState geodesic_bvp_shoot(const MetricParams& mp, const Point& p0, const Point& p1, double tol,
                                 int steps) {
    const int n = p0.dim();
    if (p1.dim() != n) fail(ErrorCode::domain, "endpoint dimensions differ");
    require_distance_metric(mp, n);
    const Chart chart(n);
    const Vector target = chart.to_coords(p1);
    const Vector origin = chart.to_coords(p0);
    if ((target - origin).cwiseAbs().maxCoeff() == 0.0) return {p0, Tangent::zero(n)};

    Vector v;
    if (p0.u == p1.u) {
        v = chart.tangent_coords(geodesic_special_normal(p0.D, p1.D, p0.u).velocity(0.0));
    } else if (n == 1) {
        v = chart.tangent_coords(geodesic_n1(mp, p0, p1).curve.velocity(0.0));
    } else {
        v = target - origin;
    }

    auto mismatch = [&](const Vector& vel, Vector& out) {
        try {
            const auto tr = geodesic_ivp(mp, {p0, chart.tangent_from_coords(vel)}, 1.0, steps);
            out = chart.to_coords(tr.states.back().pt) - target;
            return true;
        } catch (const Error&) {
            return false;
        }
    };

    Vector f;
    if (!mismatch(v, f)) fail(ErrorCode::non_convergence, "shooting: initial guess leaves the SPD cone");
    constexpr int kMaxIter = 50;
    for (int it = 0; it < kMaxIter; ++it) {
        const double err = f.cwiseAbs().maxCoeff();
        if (err <= tol) return {p0, chart.tangent_from_coords(v)};
        const int dim = chart.dim();
        Matrix J(dim, dim);
        const double eps = 1e-6 * std::max(1.0, v.cwiseAbs().maxCoeff());
        for (int k = 0; k < dim; ++k) {
            Vector vp = v, vm = v, fp, fm;
            vp[k] += eps;
            vm[k] -= eps;
            if (!mismatch(vp, fp) || !mismatch(vm, fm))
                fail(ErrorCode::non_convergence, "shooting: Jacobian probe left the SPD cone");
            J.col(k) = (fp - fm) / (2.0 * eps);
        }
        const Vector step = J.colPivHouseholderQr().solve(-f);
        double damping = 1.0;
        bool improved = false;
        for (; damping > 1e-6; damping *= 0.5) {
            Vector trial = v + damping * step, ft;
            if (mismatch(trial, ft) && ft.cwiseAbs().maxCoeff() < err) {
                v = std::move(trial);
                f = std::move(ft);
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    if (f.cwiseAbs().maxCoeff() <= tol) return {p0, chart.tangent_from_coords(v)};
    std::ostringstream os;
    os << "shooting did not converge (endpoint mismatch " << f.cwiseAbs().maxCoeff() << ")";
    fail(ErrorCode::non_convergence, os.str());
}

void write_trace_csv(std::ostream& os, const GeodesicTrace& trace) {
    if (trace.states.empty()) return;
    const int n = trace.states.front().pt.dim();
    os << "t";
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) os << ",D_" << i + 1 << j + 1;
    for (int i = 0; i < n; ++i) os << ",u_" << i + 1;
    os << '\n';
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf;
    };
    for (size_t k = 0; k < trace.states.size(); ++k) {
        put(trace.times[k]);
        const auto& pt = trace.states[k].pt;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                os << ',';
                put(pt.D.matrix()(i, j));
            }
        for (int i = 0; i < n; ++i) {
            os << ',';
            put(pt.u[i]);
        }
        os << '\n';
    }
}

}  // namespace infogeo
