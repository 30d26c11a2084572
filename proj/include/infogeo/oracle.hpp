#pragma once

// Numerical ground truth. Nothing here calls the closed-form metric,
// connection or curvature code it is used to check.

#include "infogeo/chart.hpp"
#include "infogeo/family.hpp"
#include "infogeo/metric.hpp"
#include "infogeo/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace infogeo {

enum class IntegralMethod { grid, monte_carlo };
std::string_view to_string(IntegralMethod m) noexcept;

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;  // |fine − coarse| (grid) or standard error (MC)
    IntegralMethod method = IntegralMethod::grid;
    std::optional<std::uint64_t> seed;
};

/// ∫ g(x) dx over Dom(p,D,u) at resolutions r and 2r; reports the 2r value.
IntegralEstimate quad_integral(const FamilyParams& fp, const Point& pt, const std::function<double(const Vector&)>& g,
                               int resolution = 16, Execution mode = Execution::parallel);

/// ∫ f (x−u)(x−u)ᵀ, entrywise.
Matrix numeric_covariance(const FamilyParams& fp, const Point& pt, int resolution = 16);

struct FisherEstimate {
    IntegralEstimate estimate;
    double coarse = 0.0;
    double growth = 1.0;     // |fine| / |coarse|
    bool divergent = false;  // growth ≥ 10
};

/// ∫ f·∂_a log f·∂_b log f on the grid. Scores are central differences of
/// log_density (h from 1e-5 down, shrunk near a compact boundary, one
/// Richardson step). Nodes within 1e-10 (relative) of the boundary are beyond
/// double-precision differencing and are dropped. p ≥ 2 does not throw: the
/// growth under resolution doubling is reported instead.
FisherEstimate numeric_fisher(const FamilyParams& fp, const Point& pt, const Tangent& a, const Tangent& b,
                              int resolution = 16, Execution mode = Execution::parallel);

/// Sample mean of ∂_a log f·∂_b log f over `count` draws (n ≤ 4); error is the
/// standard error.
IntegralEstimate numeric_fisher_mc(const FamilyParams& fp, const Point& pt, const Tangent& a, const Tangent& b,
                                   int count, std::uint64_t seed);

enum class EntropyKind { renyi, tsallis };

/// Mixed central second difference of S(D + tX + sY) at t = s = 0.
double fd_entropy_hessian(const FamilyParams& fp, double q, const SpdMatrix& D, const SymMatrix& X,
                          const SymMatrix& Y, double h = 1e-4, EntropyKind kind = EntropyKind::renyi);

/// G_ab = g(basis_a, basis_b) from the unified metric's defining formula.
Matrix fd_metric_components(const MetricParams& mp, const Chart& chart, const Vector& coords);

/// Dense rank-3 / rank-4 arrays, row-major in their index order.
struct Tensor3 {
    int dim = 0;
    std::vector<double> data;
    explicit Tensor3(int d = 0) : dim(d), data(static_cast<size_t>(d * d * d), 0.0) {}
    double& operator()(int i, int j, int k) { return data[static_cast<size_t>((i * dim + j) * dim + k)]; }
    double operator()(int i, int j, int k) const { return data[static_cast<size_t>((i * dim + j) * dim + k)]; }
};

struct Tensor4 {
    int dim = 0;
    std::vector<double> data;
    explicit Tensor4(int d = 0) : dim(d), data(static_cast<size_t>(d * d * d * d), 0.0) {}
    double& operator()(int i, int j, int k, int l) {
        return data[static_cast<size_t>(((i * dim + j) * dim + k) * dim + l)];
    }
    double operator()(int i, int j, int k, int l) const {
        return data[static_cast<size_t>(((i * dim + j) * dim + k) * dim + l)];
    }
};

/// Γ(c, a, b) = Γ^c_ab = ½G^{cd}(∂_a G_bd + ∂_b G_ad − ∂_d G_ab), central differences.
Tensor3 fd_christoffels(const MetricParams& mp, const Chart& chart, const Vector& coords, double h = 1e-4);

/// R(d, a, b, c) = ∂_aΓ^d_bc − ∂_bΓ^d_ac + Γ^d_ae Γ^e_bc − Γ^d_be Γ^e_ac.
Tensor4 fd_riemann(const MetricParams& mp, const Chart& chart, const Vector& coords, double h = 1e-4);

/// Ric_bc = Σ_a R(a, a, b, c).
Matrix fd_ricci(const Tensor4& R);

/// G^{bc} Ric_bc.
double fd_scalar(const MetricParams& mp, const Chart& chart, const Vector& coords, double h = 1e-4);

/// ∫₀^∞ Tr((D+tI)⁻¹X(D+tI)⁻¹Y) dt by adaptive Gauss–Kronrod.
double kubo_mori_integral(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y);

/// S_q(f_q(D,·)) − S_q(competitor) where the competitor is the member p′ of
/// the family at the same D (hence the same covariance D⁻¹); p′ = 1 is the
/// Gaussian. q = 1 compares Shannon entropies.
double max_entropy_check(int n, double q, const SpdMatrix& D, double competitor_p = 1.0);

}  // namespace infogeo
