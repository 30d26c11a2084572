#include "helpers.hpp"
#include "infogeo/chart.hpp"
#include "infogeo/curvature.hpp"
#include "infogeo/error.hpp"
#include "infogeo/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace infogeo;
using namespace infogeo::test;

namespace {
const MetricParams rao{0.0, 1.0, 1.0};
}

TEST(Riemann, AlternatingInTheFirstPair) {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 3;
        const MetricParams mp{0.1 * (k % 5), 0.5 + 0.1 * k, 1.0};
        const Point pt = random_point(n, rng);
        const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng);
        EXPECT_LT(riemann(mp, pt, a, a, c).max_abs(), 1e-12);
        EXPECT_LT((riemann(mp, pt, a, b, c) + riemann(mp, pt, b, a, c)).max_abs(), 1e-12);
    }
}

TEST(Riemann, MatchesConnectionAssembly) {
    std::mt19937_64 rng(2);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 3;
        const MetricParams mp{0.2 * (k % 3) - 0.05, 0.3 + 0.2 * k, 1.0};
        const Point pt = random_point(n, rng);
        const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng);
        const Tangent r = riemann(mp, pt, a, b, c);
        EXPECT_LT((r - riemann_from_connection(mp, pt, a, b, c)).max_abs(), 1e-11 * (1.0 + r.max_abs()));
    }
}

TEST(Riemann, FirstBianchiAndMetricSkewness) {
    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
        const int n = 1 + k % 3;
        const MetricParams mp{0.15 * (k % 4), 0.4 + 0.1 * k, 1.3};
        const Point pt = random_point(n, rng);
        const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng), c = random_tangent(n, rng),
                      d = random_tangent(n, rng);
        const Tangent bianchi = riemann(mp, pt, a, b, c) + riemann(mp, pt, b, c, a) + riemann(mp, pt, c, a, b);
        EXPECT_LT(bianchi.max_abs(), 1e-11);
        const double lhs = unified_eval(mp, pt, riemann(mp, pt, a, b, c), d);
        const double rhs = unified_eval(mp, pt, riemann(mp, pt, a, b, d), c);
        EXPECT_NEAR(lhs, -rhs, 1e-11);
        // pair symmetry
        EXPECT_NEAR(lhs, unified_eval(mp, pt, riemann(mp, pt, c, d, a), b), 1e-11);
    }
}

TEST(Riemann, PureCovarianceDirectionsAlongD) {
    std::mt19937_64 rng(4);
    const Point pt(random_spd(2, rng));
    const Tangent X(random_sym(2, rng)), Y(random_sym(2, rng)), Dd(pt.D.sym());
    EXPECT_LT(riemann(rao, pt, X, Y, Dd).max_abs(), 1e-12);
}

TEST(Ricci, SurfaceCaseIsHalfTheScalar) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const MetricParams mp{0.3 * k - 0.4, 0.5 + 0.3 * k, 1.0};
        const Point pt = random_point(1, rng);
        const Tangent a = random_tangent(1, rng), b = random_tangent(1, rng);
        const double scal = scalar_full(mp, 1);
        EXPECT_NEAR(ricci(mp, pt, a, b), 0.5 * scal * unified_eval(mp, pt, a, b), 1e-11);
    }
    EXPECT_DOUBLE_EQ(scalar_full(rao, 1), -1.0);
}

TEST(Ricci, SymmetricAndPolarizes) {
    std::mt19937_64 rng(6);
    const MetricParams mp{0.2, 0.8, 1.0};
    const Point pt = random_point(3, rng);
    const Tangent a = random_tangent(3, rng), b = random_tangent(3, rng);
    const double ab = ricci(mp, pt, a, b);
    EXPECT_NEAR(ab, ricci(mp, pt, b, a), 1e-11);
    EXPECT_NEAR(ab, 0.25 * (ricci(mp, pt, a + b, a + b) - ricci(mp, pt, a - b, a - b)), 1e-10);
}

TEST(Ricci, IndependentOfScale) {
    std::mt19937_64 rng(7);
    const Point pt = random_point(2, rng);
    const Tangent a = random_tangent(2, rng), b = random_tangent(2, rng);
    EXPECT_NEAR(ricci(MetricParams{0.1, 1, 1}, pt, a, b), ricci(MetricParams{0.1, 1, 5}, pt, a, b), 1e-12);
}

TEST(RicciOperator, RaisesAnIndex) {
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 3; ++n) {
        const MetricParams mp{0.1 * n, 1.2, 0.7};
        const Point pt = random_point(n, rng);
        const Tangent a = random_tangent(n, rng), b = random_tangent(n, rng);
        EXPECT_NEAR(unified_eval(mp, pt, ricci_operator(mp, pt, a), b), ricci(mp, pt, a, b), 1e-10);
    }
    // Surface: R̃ = (scal/2)·id.
    const Tangent e(SymMatrix::identity(1), vec({0.4}));
    const Tangent r = ricci_operator(rao, Point(scalar(3.0), vec({1.0})), e);
    EXPECT_LT((r - (-0.5) * e).max_abs(), 1e-12);
}

TEST(Scalar, ClosedForms) {
    EXPECT_DOUBLE_EQ(scalar_full(rao, 2), -4.5);
    EXPECT_DOUBLE_EQ(scalar_special(rao, 2), -3.5);
    EXPECT_DOUBLE_EQ(scalar_full(MetricParams{0, 1, 2}, 2), -2.25);
    EXPECT_THROW(scalar_full(MetricParams{-0.25, 1, 1}, 2), Error);
    // β does not enter.
    EXPECT_DOUBLE_EQ(scalar_full(MetricParams{0.3, 0.2, 1}, 3), scalar_full(MetricParams{0.3, 7.0, 1}, 3));
}

TEST(Scalar, TraceIsConstantAcrossPoints) {
    std::mt19937_64 rng(9);
    for (const MetricParams mp : {rao, MetricParams{0.35, 0.6, 1.5}, MetricParams{-0.1, 2.0, 1.0}})
        for (int n = 1; n <= 3; ++n) {
            double lo = INFINITY, hi = -INFINITY;
            for (int k = 0; k < 20; ++k) {
                const double s = scalar_from_trace(mp, random_point(n, rng));
                lo = std::min(lo, s);
                hi = std::max(hi, s);
            }
            EXPECT_LE(hi - lo, 1e-9);
            EXPECT_NEAR(lo, scalar_full(mp, n), 1e-9);
            EXPECT_NEAR(scalar_from_trace(mp, random_point(n, rng), true), scalar_special(mp, n), 1e-9);
        }
}

TEST(Scalar, ReportCarriesTheSpectrum) {
    const auto r = curvature_report(rao, Point(SpdMatrix::identity(2)));
    EXPECT_NEAR(r.scalar, -4.5, 1e-10);
    ASSERT_EQ(r.ricci_eigenvalues.size(), 5u);
    double sum = 0.0;
    for (double v : r.ricci_eigenvalues) sum += v;
    EXPECT_NEAR(sum, -4.5, 1e-10);
    EXPECT_TRUE(std::is_sorted(r.ricci_eigenvalues.rbegin(), r.ricci_eigenvalues.rend()));
}

TEST(FisherScalarExtended, Examples) {
    EXPECT_DOUBLE_EQ(fisher_scalar_extended(2, 1.0), -4.5);
    // n = 1: −(2−p)/(2(1+p))·4
    EXPECT_NEAR(fisher_scalar_extended(1, 1.5), -2.0 * 0.5 / 2.5, 1e-15);
    EXPECT_NEAR(fisher_scalar_extended(3, 1.999999), 0.0, 1e-4);
    EXPECT_THROW(fisher_scalar_extended(2, 0.5), Error);
    EXPECT_THROW(fisher_scalar_extended(2, 2.0), Error);
    EXPECT_THROW(fisher_scalar_extended(0, 1.0), Error);
}

TEST(BallVolume, Examples) {
    EXPECT_NEAR(ball_volume(2, 0.0, 1.0), std::numbers::pi, 1e-14);
    EXPECT_NEAR(ball_volume(3, 0.0, 2.0), 4.0 / 3.0 * std::numbers::pi * 8.0, 1e-12);
    EXPECT_NEAR(ball_volume(2, -4.5, 0.1), std::numbers::pi * 0.01 * (1.0 + 4.5 * 0.01 / 24.0), 1e-15);
    EXPECT_EQ(ball_volume(5, -1.0, 0.0), 0.0);
    EXPECT_THROW(ball_volume(2, 0.0, -1.0), Error);
}
