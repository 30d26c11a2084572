#include "helpers.hpp"
#include "infogeo/error.hpp"
#include "infogeo/verify.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace infogeo;
using namespace infogeo::test;

TEST(SymMatrix, RejectsAsymmetricInput) {
    EXPECT_THROW(SymMatrix(mat(2, {1, 2, 3, 4})), Error);
    const SymMatrix s = sym(2, {1, 2, 2, 4});
    EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(SymMatrix, SymmetrizeStoresExactlySymmetricEntries) {
    const SymMatrix s = symmetrize(mat(2, {1, 0.3, 0.30000001, 2}));
    EXPECT_EQ(s(0, 1), s(1, 0));
}

TEST(EigSym, Identity) {
    const auto e = eig_sym(SymMatrix::identity(2));
    EXPECT_DOUBLE_EQ(e.values[0], 1.0);
    EXPECT_DOUBLE_EQ(e.values[1], 1.0);
    EXPECT_LT(max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(2, 2)), 1e-12);
}

TEST(EigSym, DiagonalIsSortedDescending) {
    const auto e = eig_sym(SymMatrix::diagonal(vec({1, 3})));
    EXPECT_DOUBLE_EQ(e.values[0], 3.0);
    EXPECT_DOUBLE_EQ(e.values[1], 1.0);
    EXPECT_NEAR(std::abs(e.vectors(1, 0)), 1.0, 1e-15);
}

TEST(EigSym, TwoByTwoHandCase) {
    const auto e = eig_sym(sym(2, {2, 1, 1, 2}));
    EXPECT_NEAR(e.values[0], 3.0, 1e-14);
    EXPECT_NEAR(e.values[1], 1.0, 1e-14);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(e.vectors(0, 0)), r, 1e-14);
    EXPECT_NEAR(e.vectors(0, 0) * e.vectors(1, 0), 0.5, 1e-14);   // (1, 1)/√2
    EXPECT_NEAR(e.vectors(0, 1) * e.vectors(1, 1), -0.5, 1e-14);  // (1, −1)/√2
}

TEST(EigSym, ReconstructsRandomMatrices) {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 8; ++n) {
        const SymMatrix s = random_sym(n, rng, 3.0);
        const auto e = eig_sym(s);
        const Matrix back = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
        EXPECT_LE(max_abs(back - s.matrix()), 1e-10 * (1.0 + s.max_abs()));
        EXPECT_LE(max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(n, n)), 1e-10);
        for (int i = 1; i < n; ++i) EXPECT_GE(e.values[i - 1], e.values[i]);
    }
}

TEST(SpdMatrix, RejectsNearlySingularAndIndefinite) {
    EXPECT_THROW(SpdMatrix(mat(2, {1, 0, 0, 1e-11})), Error);
    EXPECT_THROW(SpdMatrix(mat(2, {1, 2, 2, 1})), Error);
    EXPECT_NO_THROW(SpdMatrix(mat(2, {1, 0, 0, 1e-9})));
}

TEST(SpdMatrix, CachedQuantities) {
    const SpdMatrix s = spd(2, {2, 1, 1, 2});
    EXPECT_NEAR(s.det(), 3.0, 1e-13);
    EXPECT_NEAR(s.log_det(), std::log(3.0), 1e-14);
    EXPECT_LT(max_abs(s.inverse() * s.matrix() - Matrix::Identity(2, 2)), 1e-14);
    EXPECT_LT(max_abs(s.sqrt() * s.sqrt() - s.matrix()), 1e-14);
    EXPECT_LT(max_abs(s.inv_sqrt() * s.matrix() * s.inv_sqrt() - Matrix::Identity(2, 2)), 1e-14);
}

TEST(SpectralApply, Examples) {
    EXPECT_LT(spectral_apply(SpdMatrix::identity(3), [](double x) { return std::log(x); }).max_abs(), 1e-15);
    const SymMatrix r = spectral_apply(SpdMatrix(SymMatrix::diagonal(vec({4, 9}))), [](double x) { return std::sqrt(x); });
    EXPECT_LT(max_abs(r.matrix() - mat(2, {2, 0, 0, 3})), 1e-15);

    // (√3 ± 1)/2 recombined from the eigenpairs of [[2,1],[1,2]].
    const SymMatrix h = spectral_apply(spd(2, {2, 1, 1, 2}), [](double x) { return std::pow(x, 0.5); });
    const double s3 = std::sqrt(3.0);
    EXPECT_LT(max_abs(h.matrix() - mat(2, {(s3 + 1) / 2, (s3 - 1) / 2, (s3 - 1) / 2, (s3 + 1) / 2})), 1e-14);
}

TEST(SpectralApply, IdentityFunctionAndLogExpRoundTrip) {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 6; ++n) {
        const SymMatrix s = random_sym(n, rng);
        EXPECT_LT((spectral_apply(s, [](double x) { return x; }) - s).max_abs(), 1e-12);

        // condition number up to e^{2·6.9} ≈ 1e6
        const SpdMatrix d = random_spd(n, rng, 6.9);
        const SpdMatrix back = sym_exp(d.log());
        EXPECT_LE((back.sym() - d.sym()).max_abs(), 1e-9 * d.sym().max_abs());
    }
}

TEST(SpectralApply, NonFiniteResultIsDomainError) {
    const SymMatrix s = SymMatrix::diagonal(vec({1, -1}));
    try {
        spectral_apply(s, [](double x) { return std::log(x); });
        FAIL() << "expected a domain error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::domain);
    }
}

TEST(SpdClassify, Examples) {
    EXPECT_EQ(spd_classify(SymMatrix::identity(2), 1e-12), Definiteness::positive_definite);
    EXPECT_EQ(spd_classify(SymMatrix::diagonal(vec({1, 0})), 1e-12), Definiteness::positive_semidefinite);
    EXPECT_EQ(spd_classify(SymMatrix::diagonal(vec({1, -1})), 1e-12), Definiteness::indefinite);
}

TEST(SymBasis, OrderAndShape) {
    ASSERT_EQ(sym_basis(1).size(), 1u);
    const auto b2 = sym_basis(2);
    ASSERT_EQ(b2.size(), 3u);
    EXPECT_EQ(b2[0].matrix(), mat(2, {1, 0, 0, 0}));
    EXPECT_EQ(b2[1].matrix(), mat(2, {0, 0, 0, 1}));
    EXPECT_EQ(b2[2].matrix(), mat(2, {0, 1, 1, 0}));

    const auto b3 = sym_basis(3);
    ASSERT_EQ(b3.size(), 6u);
    EXPECT_EQ(b3[3].matrix(), SymMatrix::unit(3, 0, 1).matrix());
    EXPECT_EQ(b3[4].matrix(), SymMatrix::unit(3, 0, 2).matrix());
    EXPECT_EQ(b3[5].matrix(), SymMatrix::unit(3, 1, 2).matrix());
    for (size_t k = 3; k < 6; ++k) EXPECT_EQ(b3[k].matrix().sum(), 2.0);
}

TEST(SymBasis, SpansSymmetricMatrices) {
    for (int n = 1; n <= 5; ++n) {
        const auto b = sym_basis(n);
        const int m = static_cast<int>(b.size());
        ASSERT_EQ(m, n * (n + 1) / 2);
        Matrix gram(m, m);
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k) gram(i, k) = (b[i].matrix().array() * b[k].matrix().array()).sum();
        EXPECT_GT(std::abs(gram.determinant()), 0.5);
    }
    std::mt19937_64 rng(5);
    const SymMatrix s = random_sym(4, rng);
    EXPECT_LT((sym_from_coordinates(4, sym_coordinates(s)) - s).max_abs(), 1e-15);
}
