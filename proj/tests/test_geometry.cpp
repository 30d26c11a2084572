#include "helpers.hpp"
#include "infogeo/error.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace infogeo;
using namespace infogeo::test;

namespace {
const MetricParams rao{0.0, 1.0, 1.0};
const double ln2 = std::numbers::ln2;

double chart_gap(const Point& a, const Point& b) {
    const Chart c(a.dim());
    return (c.to_coords(a) - c.to_coords(b)).cwiseAbs().maxCoeff();
}
}  // namespace

TEST(CovariantDerivative, Examples) {
    std::mt19937_64 rng(1);
    const Point pt = random_point(2, rng);
    const SymMatrix X = random_sym(2, rng);
    const Tangent g = covariant_derivative(MetricParams{0.3, 0.8, 1.0}, pt, Tangent(X), Tangent(X));
    EXPECT_LT(max_abs(g.X.matrix() + X.matrix() * pt.D.inverse() * X.matrix()), 1e-13);
    EXPECT_LT(g.x.norm(), 1e-15);

    const Vector x = random_vector(2, rng), y = random_vector(2, rng);
    const double beta = 1.7;
    const Tangent h =
        covariant_derivative(MetricParams{0.0, beta, 1.0}, pt, Tangent(SymMatrix(2), x), Tangent(SymMatrix(2), y));
    const Matrix& D = pt.D.matrix();
    const Matrix xy = x * y.transpose();
    const Matrix expected = -0.5 * beta * D * (xy + xy.transpose()) * D;
    EXPECT_LT(max_abs(h.X.matrix() - expected), 1e-13);
    EXPECT_LT(h.x.norm(), 1e-15);

    const Tangent e(SymMatrix(1), vec({1.0}));
    const Tangent s = covariant_derivative(rao, Point(scalar(1.0)), e, e);
    EXPECT_DOUBLE_EQ(s.X(0, 0), -1.0);  // −β·D·x²·D
    EXPECT_EQ(s.x[0], 0.0);
}

TEST(CovariantDerivative, TorsionFreeAndKoszul) {
    std::mt19937_64 rng(2);
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k < 10; ++k) {
            const MetricParams mp{0.4 * (k % 3) - 0.1, 0.5 + 0.2 * k, 1.0};
            const Point pt = random_point(n, rng);
            const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng);
            const Tangent ab = covariant_derivative(mp, pt, a, b);
            EXPECT_LT((ab - covariant_derivative(mp, pt, b, a)).max_abs(), 1e-12 * (1.0 + ab.max_abs()));
            // Koszul formula in a flat chart:
            // 2g(Γ(a)b, c) = ∂_a g(b,c) + ∂_b g(a,c) − ∂_c g(a,b)
            const double rhs = metric_derivative(mp, pt, a, b, c) + metric_derivative(mp, pt, b, a, c) -
                               metric_derivative(mp, pt, c, a, b);
            EXPECT_NEAR(2.0 * unified_eval(mp, pt, ab, c), rhs, 1e-10 * (1.0 + std::abs(rhs)));
        }
}

TEST(MetricDerivative, MatchesFiniteDifference) {
    std::mt19937_64 rng(3);
    const MetricParams mp{0.2, 1.1, 1.0};
    const Point pt = random_point(2, rng);
    const Tangent z = random_tangent(2, rng), a = random_tangent(2, rng), b = random_tangent(2, rng);
    const double h = 1e-5;
    const double fd =
        (unified_eval(mp, displace(pt, z, h), a, b) - unified_eval(mp, displace(pt, z, -h), a, b)) / (2 * h);
    EXPECT_NEAR(metric_derivative(mp, pt, z, a, b), fd, 1e-7);
}

TEST(GeodesicRhs, Examples) {
    std::mt19937_64 rng(4);
    const Point pt = random_point(2, rng);
    const SymMatrix Xd = random_sym(2, rng);
    const auto r = geodesic_rhs(MetricParams{0.3, 1, 1}, {pt, Tangent(Xd)});
    EXPECT_LT(max_abs(r.velocity_rate.X.matrix() - Xd.matrix() * pt.D.inverse() * Xd.matrix()), 1e-13);
    EXPECT_EQ(r.velocity_rate.x.norm(), 0.0);

    const double beta = 2.0, d = 1.5, ud = 0.7;
    const auto s = geodesic_rhs(MetricParams{0, beta, 1}, {Point(scalar(d)), Tangent(SymMatrix(1), vec({ud}))});
    EXPECT_NEAR(s.velocity_rate.X(0, 0), beta * d * d * ud * ud, 1e-14);
    EXPECT_EQ(s.velocity_rate.x[0], 0.0);

    for (int k = 0; k < 100; ++k) {
        const int n = 1 + k % 3;
        const MetricParams mp{0.1 * (k % 4), 1.0, 1.0};
        const GeodesicState st{random_point(n, rng), random_tangent(n, rng)};
        const auto rr = geodesic_rhs(mp, st);
        EXPECT_LT((rr.velocity_rate + covariant_derivative(mp, st.pt, st.vel, st.vel)).max_abs(), 1e-12);
        EXPECT_EQ((rr.point_rate - st.vel).max_abs(), 0.0);
    }
}

TEST(GeodesicIvp, ZeroVelocityIsConstant) {
    const Point pt(spd(2, {2, 0.5, 0.5, 1}), vec({1, 2}));
    const auto trace = geodesic_ivp(rao, {pt, Tangent::zero(2)}, 1.0, 10);
    ASSERT_EQ(trace.states.size(), 11u);
    EXPECT_EQ(chart_gap(trace.states.back().pt, pt), 0.0);
    EXPECT_EQ(path_length(rao, trace), 0.0);
}

TEST(GeodesicIvp, ExponentialSolution) {
    const auto trace = geodesic_ivp(rao, {Point(scalar(1.0)), Tangent(SymMatrix::identity(1) * 2.0)}, 1.0, 1000);
    EXPECT_NEAR(trace.states.back().pt.D.matrix()(0, 0), std::exp(2.0), 1e-8);
    EXPECT_NEAR(trace.times.back(), 1.0, 1e-15);
}

TEST(GeodesicIvp, ConservesSpeed) {
    std::mt19937_64 rng(5);
    for (const MetricParams mp : {rao, MetricParams{0.5, 0.7, 2.0}}) {
        const GeodesicState start{random_point(2, rng), random_tangent(2, rng, 0.5)};
        const auto trace = geodesic_ivp(mp, start, 1.0, 1000);
        const double s0 = unified_eval(mp, start.pt, start.vel, start.vel);
        for (const auto& s : trace.states) EXPECT_LE(std::abs(unified_eval(mp, s.pt, s.vel, s.vel) - s0), 1e-8 * s0);
    }
}

TEST(GeodesicIvp, LeavingTheConeReportsLastValidState) {
    try {
        geodesic_ivp(rao, {Point(scalar(1.0)), Tangent(SymMatrix::identity(1) * -30.0)}, 1.0, 1);
        FAIL();
    } catch (const GeodesicStepError& e) {
        EXPECT_EQ(e.code(), ErrorCode::step_failure);
        EXPECT_EQ(e.last_time(), 0.0);
        EXPECT_EQ(e.last_valid().pt.D.matrix()(0, 0), 1.0);
    }
}

TEST(GeodesicN1, WorkedExample) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    const auto r = geodesic_n1(rao, p0, p1);
    const auto& c = std::get<N1Coefficients>(r.curve.coefficients());
    EXPECT_NEAR(c.b, 2.0 * ln2, 1e-12);
    EXPECT_NEAR(c.c, -ln2, 1e-12);
    EXPECT_NEAR(c.d, 0.75, 1e-12);
    EXPECT_NEAR(r.distance, std::sqrt(2.0) * 2.0 * ln2, 1e-12);
    EXPECT_LT(chart_gap(r.curve.at(0.0), p0), 1e-9);
    EXPECT_LT(chart_gap(r.curve.at(1.0), p1), 1e-9);
    EXPECT_EQ(r.curve.family(), ClosedFamily::n1);

    const auto back = geodesic_n1(rao, p1, p0);
    EXPECT_NEAR(back.distance, r.distance, 1e-12);
    EXPECT_LT(chart_gap(back.curve.at(1.0), p0), 1e-9);
}

TEST(GeodesicN1, GeneralParametersAndEqualMeans) {
    const MetricParams mp{0.3, 0.5, 1.0};
    const Point p0(scalar(1.0), vec({0.2})), p1(scalar(3.0), vec({-0.7}));
    const auto r = geodesic_n1(mp, p0, p1);
    EXPECT_LT(chart_gap(r.curve.at(1.0), p1), 1e-9);
    for (double t : {0.1, 0.5, 0.9}) EXPECT_LT(closed_ode_residual(r.curve, mp, t), 1e-7);
    // distance = √(2+4α)|b|
    const auto& c = std::get<N1Coefficients>(r.curve.coefficients());
    EXPECT_NEAR(r.distance, std::sqrt(2.0 + 4.0 * mp.alpha) * std::abs(c.b), 1e-12);

    const auto same = geodesic_n1(rao, Point(scalar(1.0), vec({0.5})), Point(scalar(std::exp(2.0)), vec({0.5})));
    EXPECT_NEAR(same.distance, std::sqrt(2.0), 1e-12);
    EXPECT_THROW(geodesic_n1(MetricParams{0, 0, 1}, p0, p1), Error);
}

TEST(SpecialNormal, Examples) {
    const SpdMatrix I = SpdMatrix::identity(2);
    const SpdMatrix A(SymMatrix::diagonal(vec({std::exp(2.0), 1.0})));
    const auto g = geodesic_special_normal(I, A);
    EXPECT_LT(max_abs(g.at(0.3).D.matrix() - mat(2, {std::exp(0.6), 0, 0, 1})), 1e-13);
    EXPECT_LT(max_abs(g.at(0.5).D.matrix() - A.sqrt()), 1e-13);
    EXPECT_LT(max_abs(g.at(1.0).D.matrix() - A.matrix()), 1e-9);

    const auto flat = geodesic_special_normal(A, A);
    EXPECT_LT(max_abs(flat.at(0.7).D.matrix() - A.matrix()), 1e-12);
    EXPECT_LT(flat.velocity(0.2).max_abs(), 1e-12);

    EXPECT_NEAR(distance_special_normal(rao, I, A), std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(distance_special_normal(MetricParams{0.25, 1, 1}, I, A), std::sqrt(3.0), 1e-14);
    EXPECT_NEAR(distance_special_normal(MetricParams{0, 1, 4}, I, A), 2.0 * std::sqrt(2.0), 1e-14);
    EXPECT_THROW(distance_special_normal(MetricParams{-1, 1, 1}, I, A), Error);
}

TEST(SpecialNormal, EndpointsAndPathLength) {
    std::mt19937_64 rng(6);
    const SpdMatrix D0 = random_spd(3, rng), D1 = random_spd(3, rng);
    const auto g = geodesic_special_normal(D0, D1);
    EXPECT_LT(max_abs(g.at(0.0).D.matrix() - D0.matrix()), 1e-9);
    EXPECT_LT(max_abs(g.at(1.0).D.matrix() - D1.matrix()), 1e-9);

    const SpdMatrix A(SymMatrix::diagonal(vec({std::exp(2.0), 1.0})));
    const auto line = geodesic_special_normal(SpdMatrix::identity(2), A);
    const auto trace = geodesic_ivp(rao, line.state(0.0), 1.0, 1000);
    EXPECT_NEAR(path_length(rao, trace), std::sqrt(2.0), 1e-6);
}

TEST(GeodesicIvp, FourthOrderConvergence) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    const auto g = geodesic_n1(rao, p0, p1).curve;
    auto err = [&](int steps) { return chart_gap(geodesic_ivp(rao, g.state(0.0), 1.0, steps).states.back().pt, p1); };
    EXPECT_GE(err(10) / err(20), 8.0);
}

// Along a non-geodesic sampling the speed varies, so Simpson's error shows.
TEST(PathLength, FourthOrderConvergence) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    const auto g = geodesic_n1(rao, p0, p1).curve;
    const MetricParams other{0.5, 3.0, 1.0};
    const double ref = path_length(other, sample_closed(g, other, 0.0, 1.0, 2000));
    const double e1 = std::abs(path_length(other, sample_closed(g, other, 0.0, 1.0, 8)) - ref);
    const double e2 = std::abs(path_length(other, sample_closed(g, other, 0.0, 1.0, 16)) - ref);
    EXPECT_GT(e1, 1e-9);
    EXPECT_GE(e1 / e2, 8.0);
}

TEST(PathLength, OddIntervalCount) {
    const auto g = geodesic_special_normal(SpdMatrix::identity(1), scalar(std::exp(1.0)));
    EXPECT_NEAR(path_length(rao, sample_closed(g, rao, 0.0, 1.0, 7)), std::sqrt(0.5), 1e-12);
}

TEST(PiBetaEmbedding, Examples) {
    const SpdMatrix s = embed_pi_beta(1.0, Point(scalar(1.0), vec({1.0})));
    EXPECT_LT(max_abs(s.matrix() - mat(2, {2, 1, 1, 1})), 1e-15);
    EXPECT_NEAR(s.det(), 1.0, 1e-14);

    std::mt19937_64 rng(8);
    const Point z(random_spd(2, rng));
    const SpdMatrix blk = embed_pi_beta(2.5, z);
    EXPECT_LT(max_abs(blk.matrix().topLeftCorner(2, 2) - z.D.inverse()), 1e-15);
    EXPECT_EQ(blk.matrix()(2, 2), 2.5);
    EXPECT_EQ(blk.matrix()(0, 2), 0.0);

    for (int k = 0; k < 10; ++k) {
        const Point pt = random_point(1 + k % 3, rng);
        const Point back = unembed_pi_beta(0.7, embed_pi_beta(0.7, pt));
        EXPECT_LT(chart_gap(back, pt), 1e-10);
    }
    try {
        unembed_pi_beta(2.0, SpdMatrix::identity(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::nonexistence);
    }
}

TEST(Alpha0, ReducesToSpecialNormalAtZeroMean) {
    std::mt19937_64 rng(9);
    const SpdMatrix D0 = random_spd(2, rng), D1 = random_spd(2, rng);
    const auto r = geodesic_alpha0(1.0, Point(D0), Point(D1));
    const auto sn = geodesic_special_normal(D0, D1);
    for (double t : {0.0, 0.4, 1.0}) EXPECT_LT(chart_gap(r.curve.at(t), sn.at(t)), 1e-10);
    EXPECT_NEAR(r.distance, distance_special_normal(rao, D0, D1), 1e-12);
    EXPECT_NEAR(geodesic_alpha0(1.0, Point(D1), Point(D0)).distance, r.distance, 1e-12);
}

TEST(Alpha0, SharedNonzeroMeanIsAGeodesic) {
    std::mt19937_64 rng(10);
    const Vector u = random_vector(2, rng);
    const Point p0(random_spd(2, rng), u), p1(random_spd(2, rng), u);
    const auto r = geodesic_alpha0(1.3, p0, p1);
    EXPECT_LT(chart_gap(r.curve.at(1.0), p1), 1e-8);
    for (double t : {0.2, 0.6}) EXPECT_LT(closed_ode_residual(r.curve, MetricParams{0, 1.3, 1}, t), 1e-7);
}

// The embedded Siegel geodesic between points with different means leaves
// the image of the embedding, so no pull-back exists; its Siegel length is
// strictly shorter than the true distance.
TEST(Alpha0, DifferentMeansLeaveTheEmbedding) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    EXPECT_GT(alpha0_departure(1.0, p0, p1), 0.1);
    try {
        geodesic_alpha0(1.0, p0, p1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::nonexistence);
    }
    EXPECT_LT(siegel_embedding_distance(1.0, p0, p1), geodesic_n1(rao, p0, p1).distance - 0.1);
}

TEST(DiagonalFamily, Examples) {
    const Matrix swap = mat(2, {0, 1, 1, 0});
    const auto still = geodesic_diagonal_family(1.0, swap, vec({1, 1}), vec({0, 0}), vec({0.3, 0.1}), vec({0, 0}));
    EXPECT_LT(chart_gap(still.at(0.0), still.at(1.0)), 1e-15);
    EXPECT_EQ(diagonal_family_distance(vec({0, 0}), 0.0, 3.0), 0.0);

    const MetricParams mp{0, 1.5, 1};
    const auto g = geodesic_diagonal_family(1.5, swap, vec({0.8, 0.8}), vec({0.6, 0}), vec({0.2, -0.3}), vec({0.1, 0}));
    for (double t : {0.0, 0.3, 0.8, 1.5}) EXPECT_LT(closed_ode_residual(g, mp, t), 1e-8);
    EXPECT_NEAR(path_length(mp, sample_closed(g, mp, 0.5, 2.0, 300)),
                diagonal_family_distance(vec({0.6, 0}), 0.5, 2.0), 1e-9);
}

TEST(DiagonalFamily, OneDimensionalCaseIsTheCoshTanhCurve) {
    const double beta = 1.0, a1 = 1.2, b = 0.7, c = -0.2, d = 0.3;
    const auto g = geodesic_diagonal_family(beta, Matrix::Identity(1, 1), vec({a1}), vec({b}), vec({c}), vec({d}));
    const ClosedGeodesic n1(N1Coefficients{a1, b, c, d, std::sqrt(1.0 / beta), 1.0});
    for (double t : {0.0, 0.5, 1.0}) EXPECT_LT(chart_gap(g.at(t), n1.at(t)), 1e-12);
}

TEST(DiagonalFamily, Validation) {
    const Matrix I = Matrix::Identity(2, 2);
    auto code = [&](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::usage;
    };
    EXPECT_EQ(code([&] { geodesic_diagonal_family(1, I, vec({1, 2}), vec({1, 0}), vec({0, 0}), vec({0, 0})); }),
              ErrorCode::validation);
    EXPECT_EQ(code([&] { geodesic_diagonal_family(1, 2 * I, vec({1, 1}), vec({1, 0}), vec({0, 0}), vec({0, 0})); }),
              ErrorCode::validation);
    EXPECT_EQ(code([&] { geodesic_diagonal_family(0, I, vec({1, 1}), vec({1, 0}), vec({0, 0}), vec({0, 0})); }),
              ErrorCode::validation);
    EXPECT_EQ(code([&] { geodesic_diagonal_family(1, I, vec({1, 1}), vec({1, 1}), vec({0, 0}), vec({0, 0})); }),
              ErrorCode::validation);
}

// With two active entries of B the displayed curve is not a geodesic.
TEST(DiagonalFamily, TwoActiveRatesViolateTheGeodesicEquation) {
    const ClosedGeodesic g(DiagonalCoefficients{1.0, Matrix::Identity(2, 2), vec({1, 1}), vec({0.5, 0.8}),
                                                vec({0.1, 0.2}), vec({0, 0})});
    EXPECT_GT(closed_ode_residual(g, rao, 0.5), 1e-2);
}

TEST(ClosedFamilies, IvpReachesClosedEndpoint) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    const auto r = geodesic_n1(rao, p0, p1);
    const auto trace = geodesic_ivp(rao, r.curve.state(0.0), 1.0, 1000);
    EXPECT_LT(chart_gap(trace.states.back().pt, p1), 1e-6);
}

TEST(Shooting, Examples) {
    const Point p0(scalar(2.0), vec({0.0})), p1(scalar(2.0), vec({1.5}));
    const auto zero = geodesic_bvp_shoot(rao, p0, p0);
    EXPECT_EQ(zero.vel.max_abs(), 0.0);

    const auto s = geodesic_bvp_shoot(rao, p0, p1);
    EXPECT_NEAR(std::sqrt(unified_eval(rao, s.pt, s.vel, s.vel)), std::sqrt(2.0) * 2.0 * ln2, 1e-5);

    std::mt19937_64 rng(11);
    for (double alpha : {-0.1, 0.0, 0.7}) {
        const MetricParams mp{alpha, 1.0, 1.0};
        const Vector u = random_vector(2, rng);
        const SpdMatrix D0 = random_spd(2, rng), D1 = random_spd(2, rng);
        const auto st = geodesic_bvp_shoot(mp, Point(D0, u), Point(D1, u));
        EXPECT_NEAR(std::sqrt(unified_eval(mp, st.pt, st.vel, st.vel)), distance_special_normal(mp, D0, D1), 1e-5);
    }
}

TEST(Shooting, GenericEndpointsInTwoDimensions) {
    std::mt19937_64 rng(12);
    const MetricParams mp{0.2, 0.8, 1.0};
    const Point p0 = random_point(2, rng), p1 = random_point(2, rng);
    const auto st = geodesic_bvp_shoot(mp, p0, p1);
    const auto trace = geodesic_ivp(mp, st, 1.0, 1000);
    EXPECT_LT(chart_gap(trace.states.back().pt, p1), 1e-9);
}

TEST(TraceCsv, HeaderAndPrecision) {
    const auto g = geodesic_special_normal(SpdMatrix::identity(2), spd(2, {2, 0.5, 0.5, 1}), vec({0.1, 0.2}));
    std::ostringstream os;
    write_trace_csv(os, sample_closed(g, rao, 0.0, 1.0, 4));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "t,D_11,D_12,D_22,u_1,u_2");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 5);
    EXPECT_NE(os.str().find("0.10000000000000001"), std::string::npos);
}
