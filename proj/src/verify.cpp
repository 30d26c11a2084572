#include "infogeo/verify.hpp"

#include "infogeo/curvature.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/oracle.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <utility>

namespace infogeo {

bool CriterionResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

bool CriterionResult::passed_except_defects() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || c.known_defect; });
}

SpdMatrix random_spd(int n, std::mt19937_64& rng, double spread) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uni(-spread, spread);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) g(i, k) = gauss(rng);
    const Matrix q = Eigen::HouseholderQR<Matrix>(g).householderQ();
    Vector d(n);
    for (int i = 0; i < n; ++i) d[i] = std::exp(uni(rng));
    return SpdMatrix(symmetrize(q * d.asDiagonal() * q.transpose()));
}

SymMatrix random_sym(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) m(i, k) = gauss(rng);
    return symmetrize(m);
}

Vector random_vector(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> gauss(0.0, scale);
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = gauss(rng);
    return v;
}

Point random_point(int n, std::mt19937_64& rng) {
    SpdMatrix D = random_spd(n, rng);
    return Point(std::move(D), random_vector(n, rng, 0.5));
}

Tangent random_tangent(int n, std::mt19937_64& rng, double scale) {
    SymMatrix X = random_sym(n, rng, scale);
    return Tangent(std::move(X), random_vector(n, rng, scale));
}

namespace {

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

class Recorder {
public:
    Recorder(CriterionResult& out, double scale) : out_(out), scale_(scale) {}

    // |value − reference| ≤ tol (scaled by the tolerance profile).
    Check& near(std::string name, double value, double reference, double tol) {
        const double t = tol * scale_;
        return push({std::move(name), value, reference, t, t - std::abs(value - reference)});
    }
    Check& at_least(std::string name, double value, double bound) {
        return push({std::move(name), value, bound, 0.0, value - bound});
    }
    Check& at_most(std::string name, double value, double bound) {
        return push({std::move(name), value, bound, 0.0, bound - value});
    }
    void error(std::string name, const std::exception& e) {
        push({std::move(name) + " threw: " + e.what(), std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0,
              -std::numeric_limits<double>::infinity()});
    }

private:
    Check& push(Check c) {
        c.passed = c.margin >= 0.0;  // NaN fails
        out_.checks.push_back(std::move(c));
        return out_.checks.back();
    }
    CriterionResult& out_;
    double scale_;
};

std::mt19937_64 criterion_rng(const VerifyOptions& opts, int id) {
    return std::mt19937_64(opts.seed * 1000003ULL + static_cast<std::uint64_t>(id));
}

SpdMatrix fixed_d2() {
    Matrix m(2, 2);
    m << 2.0, 0.5, 0.5, 1.0;
    return SpdMatrix(m);
}

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

SpdMatrix scalar_spd(double d) { return SpdMatrix(Matrix::Constant(1, 1, d)); }

double rao_trace_form(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y) {
    const Matrix& Di = D.inverse();
    return 0.5 * (Di * X.matrix() * Di * Y.matrix()).trace();
}

double chart_distance(const Chart& chart, const Point& a, const Point& b) {
    return (chart.to_coords(a) - chart.to_coords(b)).cwiseAbs().maxCoeff();
}

// ---- 1: entropy closed forms vs quadrature --------------------------------

void entropy_closed_forms(Recorder& rec, const VerifyOptions&) {
    struct Case {
        int n;
        double p;
    };
    const Case cases[] = {{1, 0.8}, {1, 1.0}, {1, 1.5}, {1, 3.0}, {2, 0.95}, {2, 1.0}, {2, 1.5}};
    for (const auto& c : cases) {
        const FamilyParams fp(c.n, c.p);
        const Point pt = c.n == 1 ? Point(scalar_spd(1.7), vec({0.4})) : Point(fixed_d2(), vec({0.3, -0.2}));
        for (double q : {0.9, 1.5, 2.0}) {
            if (!(q > power_integral_lower_bound(fp))) continue;
            const std::string name = fmt("S_q n=%d p=%g q=%g", c.n, c.p, q);
            try {
                const double closed = renyi_entropy(fp, pt.D, q).value;
                const auto est =
                    quad_integral(fp, pt, [&](const Vector& x) { return std::exp(q * log_density(fp, pt, x)); });
                rec.near(name, closed, std::log(est.value) / (1.0 - q), 1e-6);
            } catch (const std::exception& e) {
                rec.error(name, e);
            }
        }
    }
}

// ---- 2/3: entropy Hessians ----------------------------------------------

constexpr std::pair<double, double> hessian_pairs[] = {{1.5, 2.0}, {0.8, 1.2}, {1.0, 2.0}, {3.0, 0.9}, {0.9, 1.5}};

void renyi_hessian(Recorder& rec, const VerifyOptions& opts) {
    const SpdMatrix I2 = SpdMatrix::identity(2);
    const SymMatrix E11 = SymMatrix::unit(2, 0, 0);
    rec.near("D=I, X=Y=E11, (p,q)=(1.5,2)", fd_entropy_hessian(FamilyParams(2, 1.5), 2.0, I2, E11, E11), 0.5,
             1e-5);

    auto rng = criterion_rng(opts, 2);
    for (int trial = 0; trial < 3; ++trial) {
        const SpdMatrix D = random_spd(2, rng);
        const SymMatrix X = random_sym(2, rng), Y = random_sym(2, rng);
        const double form = rao_trace_form(D, X, Y);
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (auto [p, q] : hessian_pairs) {
            const double h = fd_entropy_hessian(FamilyParams(2, p), q, D, X, Y);
            rec.near(fmt("trial %d (p,q)=(%g,%g) vs trace form", trial, p, q), h, form, 1e-5);
            lo = std::min(lo, h);
            hi = std::max(hi, h);
        }
        rec.near(fmt("trial %d spread across (p,q)", trial), hi - lo, 0.0, 1e-5);
    }
}

void tsallis_hessian(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 3);
    for (int trial = 0; trial < 3; ++trial) {
        const Point pt(random_spd(2, rng));
        const SymMatrix X = random_sym(2, rng), Y = random_sym(2, rng);
        for (auto [p, q] : hessian_pairs) {
            const double fd = fd_entropy_hessian(FamilyParams(2, p), q, pt.D, X, Y, 1e-4, EntropyKind::tsallis);
            const double closed = named_eval(metrics::Tsallis{p, q}, pt, Tangent(X), Tangent(Y));
            rec.near(fmt("trial %d (p,q)=(%g,%g)", trial, p, q), fd, closed, 1e-5);
        }
        const double form = rao_trace_form(pt.D, X, Y);
        for (double q : {1.0 - 1e-5, 1.0 + 1e-5}) {
            const double fd = fd_entropy_hessian(FamilyParams(2, 1.5), q, pt.D, X, Y, 1e-4, EntropyKind::tsallis);
            rec.near(fmt("trial %d q=%.5f vs Renyi form", trial, q), fd, form, 1e-4);
        }
    }
}

// ---- 4: Fisher information ------------------------------------------------

void fisher(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 4);
    for (int n : {1, 2})
        for (double p : {0.9, 1.0, 1.5}) {
            const FamilyParams fp(n, p);
            for (int k = 0; k < 20; ++k) {
                const Point pt = random_point(n, rng);
                const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng);
                const auto est = numeric_fisher(fp, pt, a, b);
                const double closed = named_eval(metrics::Fisher{p}, pt, a, b);
                rec.near(fmt("grid n=%d p=%g #%d", n, p, k), est.estimate.value, closed,
                         std::max(1e-4, 3.0 * est.estimate.error / opts.tolerance_scale));
            }
        }

    for (int n : {3, 4})
        for (double p : {0.9, 1.0, 1.5}) {
            const FamilyParams fp(n, p);
            for (int k = 0; k < 20; ++k) {
                const Point pt = random_point(n, rng);
                const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng);
                const std::uint64_t seed = opts.seed + static_cast<std::uint64_t>(1000 * n + 100 * p + k);
                const auto est = numeric_fisher_mc(fp, pt, a, b, 20000, seed);
                const double closed = named_eval(metrics::Fisher{p}, pt, a, b);
                // 3σ is statistical, not a tolerance: the profile does not scale it.
                rec.near(fmt("monte-carlo n=%d p=%g #%d (3 sigma)", n, p, k), est.value, closed,
                         3.0 * est.error / opts.tolerance_scale);
            }
        }

    for (double p : {0.9, 1.0, 1.5}) {
        const int n = 2;
        const FamilyParams fp(n, p);
        const Point pt = random_point(n, rng);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                Vector e = Vector::Zero(n);
                e[k] = 1.0;
                const auto est =
                    numeric_fisher(fp, pt, Tangent(SymMatrix::unit(n, i, i)), Tangent(SymMatrix(n), e));
                rec.near(fmt("cross block p=%g (E_%d%d, e_%d)", p, i + 1, i + 1, k + 1), est.estimate.value, 0.0,
                         1e-5);
            }
    }

    const Tangent a(SymMatrix::identity(1), vec({1.0}));
    const auto est = numeric_fisher(FamilyParams(1, 2.5), Point(scalar_spd(1.3), vec({0.2})), a, a);
    rec.at_least("p=2.5 growth under resolution doubling", est.growth, 10.0);
}

// ---- 5: Csiszár ---------------------------------------------------------

void csiszar(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 5);
    const CsiszarPhi phis[] = {CsiszarPhi::kl(), CsiszarPhi::hellinger(), CsiszarPhi::alpha_relative(0.3)};
    struct Case {
        int n;
        double p;
    };
    for (const Case c : {Case{1, 1.0}, Case{1, 0.8}, Case{2, 0.9}}) {
        const FamilyParams fp(c.n, c.p);
        const Point pt = random_point(c.n, rng);
        const Tangent a = random_tangent(c.n, rng, 0.5);
        const double g = named_eval(metrics::Fisher{c.p}, pt, a, a);
        for (const auto& phi : phis) {
            const double ratio = csiszar_induced_form(phi, fp, pt, a, a) / g;
            rec.near(fmt("%s n=%d p=%g", phi.name().c_str(), c.n, c.p), ratio, phi.second_derivative_at_one(), 1e-3);
        }
    }
}

// ---- 6: metric canonicalization -------------------------------------------

void canonicalization(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 6);
    double worst_fc = 0.0, worst_lmr = 0.0;
    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 4;
        const Point pt = random_point(n, rng);
        const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng);
        const double f = named_eval(metrics::Fisher{1.0}, pt, a, b);
        const double co = named_eval(metrics::CalvoOller{1.0}, pt, a, b);
        worst_fc = std::max(worst_fc, std::abs(f - co) / std::max(1.0, std::abs(co)));
        const double lmr = named_eval(metrics::LMR{}, pt, a, b);
        const double uni =
            2.0 * unified_eval(MetricParams{-1.0 / (2.0 * (n + 1)), 0.25, 1.0}, pt, a, b);
        worst_lmr = std::max(worst_lmr, std::abs(lmr - uni) / std::max(1.0, std::abs(uni)));
    }
    rec.near("Fisher(1) vs Calvo-Oller(1), 100 random", worst_fc, 0.0, 1e-12);
    rec.near("LMR vs 2*unified(-1/(2(n+1)), 1/4), 100 random", worst_lmr, 0.0, 1e-10);

    const MetricSpec specs[] = {metrics::Fisher{0.8}, metrics::Fisher{1.5}, metrics::CalvoOller{1.0},
                                metrics::CalvoOller{2.0}, metrics::LMR{}};
    for (int n : {1, 2, 3}) {
        const Point pt = random_point(n, rng);
        std::vector<Tangent> probes;
        for (int k = 0; k < 3; ++k) probes.emplace_back(random_sym(n, rng));
        probes.emplace_back(SymMatrix(n), random_vector(n, rng));
        probes.push_back(random_tangent(n, rng));
        for (size_t i = 0; i < std::size(specs); ++i)
            for (size_t j = i + 1; j < std::size(specs); ++j) {
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (const auto& t : probes) {
                    const double r = named_eval(specs[i], pt, t, t) / named_eval(specs[j], pt, t, t);
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
                rec.at_least(fmt("n=%d %s vs %s ratio spread", n, metric_name(specs[i]).c_str(),
                                 metric_name(specs[j]).c_str()),
                             hi / lo - 1.0, 0.01);
            }
    }
}

// ---- 7: geodesics ---------------------------------------------------------

struct NamedGeodesic {
    std::string name;
    ClosedGeodesic curve;
    MetricParams mp;
};

std::vector<NamedGeodesic> closed_families(std::mt19937_64& rng) {
    std::vector<NamedGeodesic> out;
    const MetricParams rao{0.0, 1.0, 1.0};
    const Point w0(scalar_spd(2.0), vec({0.0})), w1(scalar_spd(2.0), vec({1.5}));
    out.push_back({"n1 worked example", geodesic_n1(rao, w0, w1).curve, rao});
    const MetricParams mixed{0.3, 0.5, 1.0};
    out.push_back({"n1 alpha=0.3 beta=0.5",
                   geodesic_n1(mixed, Point(scalar_spd(1.0), vec({0.2})), Point(scalar_spd(3.0), vec({-0.7}))).curve,
                   mixed});
    const SpdMatrix D0 = random_spd(2, rng), D1 = random_spd(2, rng);
    const Vector u = random_vector(2, rng);
    out.push_back({"special normal n=2", geodesic_special_normal(D0, D1, u), MetricParams{0.5, 1.0, 1.0}});
    out.push_back({"alpha0 pull-back n=2", geodesic_alpha0(1.0, Point(D0, u), Point(D1, u)).curve, rao});
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    out.push_back({"diagonal family n=2",
                   geodesic_diagonal_family(1.5, swap, vec({0.8, 0.8}), vec({0.6, 0.0}), vec({0.2, -0.3}),
                                            vec({0.1, -0.2})),
                   MetricParams{0.0, 1.5, 1.0}});
    return out;
}

void geodesics(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 7);
    const auto families = closed_families(rng);
    for (const auto& g : families) {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) worst = std::max(worst, closed_ode_residual(g.curve, g.mp, 0.05 * k + 0.025));
        rec.near(g.name + ": ODE residual at 20 times", worst, 0.0, 1e-7);
    }
    for (const auto& g : families) {
        const Chart chart(g.curve.at(0.0).dim());
        const auto trace = geodesic_ivp(g.mp, g.curve.state(0.0), 1.0, 1000);
        rec.near(g.name + ": IVP endpoint", chart_distance(chart, trace.states.back().pt, g.curve.at(1.0)), 0.0,
                 1e-6);
    }

    const MetricParams rao{0.0, 1.0, 1.0};
    const Point w0(scalar_spd(2.0), vec({0.0})), w1(scalar_spd(2.0), vec({1.5}));
    const double true_distance = geodesic_n1(rao, w0, w1).distance;
    rec.near("cosh/tanh vs Siegel-embedding distance, worked example (u0 != u1)",
             siegel_embedding_distance(1.0, w0, w1), true_distance, 1e-9)
        .known_defect = true;
    const Point s0(scalar_spd(0.5), vec({0.7})), s1(scalar_spd(3.0), vec({0.7}));
    rec.near("cosh/tanh vs Siegel-embedding distance, u0 = u1", siegel_embedding_distance(1.0, s0, s1),
             geodesic_n1(rao, s0, s1).distance, 1e-9);

    auto shoot = [&](const std::string& name, const MetricParams& mp, const Point& a, const Point& b,
                     double expected) {
        try {
            const auto start = geodesic_bvp_shoot(mp, a, b);
            rec.near("shooting: " + name, std::sqrt(unified_eval(mp, start.pt, start.vel, start.vel)), expected,
                     1e-5);
        } catch (const std::exception& e) {
            rec.error("shooting: " + name, e);
        }
    };
    shoot("n1 worked example", rao, w0, w1, true_distance);
    for (double alpha : {0.0, 0.5}) {
        const MetricParams mp{alpha, 1.0, 1.0};
        const SpdMatrix D0 = random_spd(2, rng), D1 = random_spd(2, rng);
        const Vector u = random_vector(2, rng);
        shoot(fmt("special normal n=2 alpha=%g", alpha), mp, Point(D0, u), Point(D1, u),
              distance_special_normal(mp, D0, D1));
    }
    const auto& diag = families.back();
    const auto& dc = std::get<DiagonalCoefficients>(diag.curve.coefficients());
    shoot("diagonal family n=2", diag.mp, diag.curve.at(0.0), diag.curve.at(1.0),
          diagonal_family_distance(dc.B, 0.0, 1.0));
}

// ---- 8: distances ---------------------------------------------------------

void distances(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 8);
    for (int n : {2, 3})
        for (double alpha : {0.0, 0.5}) {
            const MetricParams mp{alpha, 1.0, 1.0};
            const SpdMatrix D0 = random_spd(n, rng), D1 = random_spd(n, rng);
            const auto g = geodesic_special_normal(D0, D1);
            const auto trace = geodesic_ivp(mp, g.state(0.0), 1.0, 1000);
            rec.near(fmt("special normal n=%d alpha=%g vs path length", n, alpha), path_length(mp, trace),
                     distance_special_normal(mp, D0, D1), 1e-6);
        }

    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const int n = 2 + k % 2;
        const MetricParams mp{k % 3 == 0 ? 0.0 : 0.4, 1.0, 1.0};
        const SpdMatrix D0 = random_spd(n, rng), D1 = random_spd(n, rng);
        SymMatrix T = random_sym(n, rng);
        while (std::abs(T.matrix().determinant()) < 0.1) T = random_sym(n, rng);
        const Matrix& t = T.matrix();
        const SpdMatrix E0(symmetrize(t * D0.matrix() * t)), E1(symmetrize(t * D1.matrix() * t));
        worst = std::max(worst,
                         std::abs(distance_special_normal(mp, E0, E1) - distance_special_normal(mp, D0, D1)));
    }
    rec.near("congruence invariance, 20 random T", worst, 0.0, 1e-9);

    double slack = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        const int n = 2 + k % 2;
        const MetricParams mp{(k / 2) % 2 == 0 ? 0.0 : 1.0, 1.0, 1.0};
        const SpdMatrix A = random_spd(n, rng), B = random_spd(n, rng), C = random_spd(n, rng);
        slack = std::min(slack, distance_special_normal(mp, A, B) + distance_special_normal(mp, B, C) -
                                    distance_special_normal(mp, A, C));
    }
    rec.at_least("triangle inequality, 200 random triples (min slack)", slack, -1e-9);

    const MetricParams rao{0.0, 1.0, 1.0};
    rec.near("worked example (2,0)->(2,1.5)",
             geodesic_n1(rao, Point(scalar_spd(2.0), vec({0.0})), Point(scalar_spd(2.0), vec({1.5}))).distance,
             std::sqrt(2.0) * 2.0 * std::numbers::ln2, 1e-9);
    rec.near("special normal I -> diag(e^2, 1)",
             distance_special_normal(rao, SpdMatrix::identity(2), SpdMatrix(SymMatrix::diagonal(vec({std::exp(2.0), 1.0})))),
             std::sqrt(2.0), 1e-12);
}

// ---- 9: curvature ---------------------------------------------------------

void curvature(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 9);
    const Chart chart(2);
    const int dim = chart.dim();
    for (const MetricParams mp : {MetricParams{0.0, 1.0, 1.0}, MetricParams{0.3, 0.7, 2.0}})
        for (int trial = 0; trial < 2; ++trial) {
            const Point pt = random_point(2, rng);
            const Vector coords = chart.to_coords(pt);
            const Tensor4 R = fd_riemann(mp, chart, coords);
            double err_r = 0.0;
            for (int a = 0; a < dim; ++a)
                for (int b = 0; b < dim; ++b)
                    for (int c = 0; c < dim; ++c) {
                        const Vector r =
                            chart.tangent_coords(riemann(mp, pt, chart.basis(a), chart.basis(b), chart.basis(c)));
                        for (int d = 0; d < dim; ++d) err_r = std::max(err_r, std::abs(r[d] - R(d, a, b, c)));
                    }
            const Matrix fric = fd_ricci(R);
            double err_ric = 0.0;
            for (int b = 0; b < dim; ++b)
                for (int c = 0; c < dim; ++c)
                    err_ric = std::max(err_ric, std::abs(ricci(mp, pt, chart.basis(b), chart.basis(c)) - fric(b, c)));
            const std::string tag = fmt("alpha=%g beta=%g scale=%g #%d", mp.alpha, mp.beta, mp.scale, trial);
            rec.near("Riemann components vs FD " + tag, err_r, 0.0, 1e-4);
            rec.near("Ricci components vs FD " + tag, err_ric, 0.0, 1e-4);
            rec.near("scalar vs FD " + tag, scalar_full(mp, 2), fd_scalar(mp, chart, coords), 1e-3);
        }

    double bianchi = 0.0, anti = 0.0;
    for (int n : {1, 2, 3})
        for (int k = 0; k < 10; ++k) {
            const MetricParams mp{k % 2 == 0 ? 0.0 : 0.4, 1.0 + 0.1 * k, 1.0};
            const Point pt = random_point(n, rng);
            const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng);
            const Tangent rabc = riemann(mp, pt, a, b, c);
            bianchi = std::max(bianchi, (rabc + riemann(mp, pt, b, c, a) + riemann(mp, pt, c, a, b)).max_abs());
            anti = std::max(anti, (rabc + riemann(mp, pt, b, a, c)).max_abs());
        }
    rec.near("first Bianchi identity, 30 random", bianchi, 0.0, 1e-9);
    rec.near("antisymmetry R(a,b,c) = -R(b,a,c), 30 random", anti, 0.0, 1e-9);

    const MetricParams rao{0.0, 1.0, 1.0};
    const Point p1 = random_point(1, rng), p2 = random_point(2, rng);
    rec.near("Scal(1,0) closed form", scalar_full(rao, 1), -1.0, 1e-12);
    rec.near("Scal(1,0) Ricci trace", scalar_from_trace(rao, p1), -1.0, 1e-12);
    rec.near("Scal(2,0) closed form", scalar_full(rao, 2), -4.5, 1e-12);
    rec.near("Scal(2,0) Ricci trace", scalar_from_trace(rao, p2), -4.5, 1e-12);
    rec.near("Scal_s(2,0) closed form", scalar_special(rao, 2), -3.5, 1e-12);
    rec.near("Scal_s(2,0) Ricci trace", scalar_from_trace(rao, p2, true), -3.5, 1e-12);
}

// ---- 10: extended-Gaussian scalar curvature -------------------------------

void extended_scalar(Recorder& rec, const VerifyOptions&) {
    for (int n : {1, 2, 3}) {
        for (double p : {0.8, 1.0, 1.5, 1.9}) {
            const auto mp = as_unified(metrics::Fisher{p}, n);
            if (!mp) continue;
            rec.near(fmt("n=%d p=%g vs scalar_full", n, p), fisher_scalar_extended(n, p), scalar_full(*mp, n), 1e-12);
        }
        const double lo = static_cast<double>(n) / (n + 2);
        double min_step = std::numeric_limits<double>::infinity();
        double prev = fisher_scalar_extended(n, lo + (2.0 - lo) * 0.5 / 100);
        for (int i = 1; i < 100; ++i) {
            const double cur = fisher_scalar_extended(n, lo + (2.0 - lo) * (i + 0.5) / 100);
            min_step = std::min(min_step, cur - prev);
            prev = cur;
        }
        rec.at_least(fmt("n=%d monotone increasing (min step over 100 samples)", n), min_step, 0.0).passed =
            min_step > 0.0;
        rec.near(fmt("n=%d limit p -> 2", n), fisher_scalar_extended(n, 2.0 - 1e-9), 0.0, 1e-6);
    }
}

// ---- 11: maximum entropy --------------------------------------------------

void max_entropy(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 11);
    double worst = std::numeric_limits<double>::infinity();
    int compared = 0;
    for (int n : {1, 2}) {
        const SpdMatrix D = random_spd(n, rng);
        for (double q : {0.8, 1.0, 1.5, 2.0, 3.0})
            for (double pc : {0.7, 0.9, 1.0, 1.2, 2.0, 3.0}) {
                if (!(pc > static_cast<double>(n) / (n + 2)) || !(q > static_cast<double>(n) / (n + 2))) continue;
                try {
                    worst = std::min(worst, max_entropy_check(n, q, D, pc));
                    ++compared;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::domain) throw;  // competitor entropy diverges
                }
            }
        for (double q : {0.8, 1.5, 2.0})
            rec.near(fmt("n=%d q=%g self competitor", n, q), max_entropy_check(n, q, D, q), 0.0, 1e-12);
    }
    rec.at_least(fmt("minimum margin over %d (q, competitor) pairs", compared), worst, -1e-9);
    const SpdMatrix D1 = random_spd(1, rng);
    for (double q : {0.8, 1.5})
        rec.at_least(fmt("n=1 q=%g Gaussian competitor", q), max_entropy_check(1, q, D1, 1.0), 1e-6);
}

// ---- 12: quantum metrics --------------------------------------------------

void quantum(Recorder& rec, const VerifyOptions& opts) {
    auto rng = criterion_rng(opts, 12);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const SpdMatrix D = random_spd(3, rng);
        const SymMatrix X = random_sym(3, rng), Y = random_sym(3, rng);
        worst = std::max(worst, std::abs(kubo_mori_eval(D, X, Y) - kubo_mori_integral(D, X, Y)));
    }
    rec.near("Kubo-Mori kernel vs integral, 20 random n=3", worst, 0.0, 1e-8);
    const SpdMatrix I = SpdMatrix::identity(3);
    double km = 0.0, lg = 0.0;
    for (int k = 0; k < 20; ++k) {
        const SymMatrix X = random_sym(3, rng), Y = random_sym(3, rng);
        const double tr = (X.matrix() * Y.matrix()).trace();
        km = std::max(km, std::abs(kubo_mori_eval(I, X, Y) - tr));
        lg = std::max(lg, std::abs(largest_eval(I, X, Y) - tr));
    }
    rec.near("Kubo-Mori at D=I vs Tr(XY)", km, 0.0, 1e-12);
    rec.near("largest at D=I vs Tr(XY)", lg, 0.0, 1e-12);
}

struct CriterionInfo {
    const char* title;
    const char* suite;
    void (*run)(Recorder&, const VerifyOptions&);
};

constexpr CriterionInfo criteria[criterion_count] = {
    {"entropy closed forms vs quadrature", "family", entropy_closed_forms},
    {"Renyi entropy Hessian", "family", renyi_hessian},
    {"Tsallis entropy Hessian", "family", tsallis_hessian},
    {"Fisher closed form vs numeric", "metric", fisher},
    {"Csiszar induced form", "metric", csiszar},
    {"metric canonicalization", "metric", canonicalization},
    {"closed-form geodesics", "geometry", geodesics},
    {"distances", "geometry", distances},
    {"curvature vs finite differences", "curvature", curvature},
    {"extended-Gaussian scalar curvature", "curvature", extended_scalar},
    {"maximum entropy", "family", max_entropy},
    {"quantum metrics", "metric", quantum},
};

}  // namespace

std::vector<int> suite_criteria(std::string_view suite) {
    std::vector<int> ids;
    for (int i = 0; i < criterion_count; ++i)
        if (suite == "all" || suite == criteria[i].suite) ids.push_back(i + 1);
    if (ids.empty()) fail(ErrorCode::usage, "unknown suite '" + std::string(suite) + "'");
    return ids;
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
    if (id < 1 || id > criterion_count) fail(ErrorCode::usage, "no criterion " + std::to_string(id));
    const auto& info = criteria[id - 1];
    CriterionResult out{id, info.title, info.suite, {}};
    Recorder rec(out, opts.tolerance_scale);
    try {
        info.run(rec, opts);
    } catch (const std::exception& e) {
        rec.error("criterion aborted", e);
    }
    return out;
}

}  // namespace infogeo
