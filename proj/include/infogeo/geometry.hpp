#pragma once

#include "infogeo/chart.hpp"
#include "infogeo/error.hpp"
#include "infogeo/metric.hpp"

#include <iosfwd>
#include <variant>
#include <vector>

namespace infogeo {

/// Γ_(D,u)(a)(b), the Levi-Civita connection of the unified metric in the
/// flat chart. Symmetric in (a, b); independent of the metric scale.
Tangent covariant_derivative(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b);

/// Directional derivative of the metric: d/dt g_{pt + t z}(a, b) at t = 0.
double metric_derivative(const MetricParams& mp, const Point& pt, const Tangent& z, const Tangent& a,
                         const Tangent& b);

struct GeodesicState {
    Point pt;
    Tangent vel;
};

struct StateDerivative {
    Tangent point_rate;     // = vel
    Tangent velocity_rate;  // = −Γ(vel)(vel)
};

StateDerivative geodesic_rhs(const MetricParams& mp, const GeodesicState& s);

struct GeodesicTrace {
    std::vector<double> times;
    std::vector<GeodesicState> states;
    MetricParams mp;
};

/// Raised when D leaves the SPD cone mid-integration.
class GeodesicStepError : public Error {
public:
    GeodesicStepError(const std::string& what, GeodesicState last, double t)
        : Error(ErrorCode::step_failure, what), last_(std::move(last)), t_(t) {}
    const GeodesicState& last_valid() const noexcept { return last_; }
    double last_time() const noexcept { return t_; }

private:
    GeodesicState last_;
    double t_;
};

/// Fixed-step classical RK4 on (D, u, Ḋ, u̇) over [0, t_end].
GeodesicTrace geodesic_ivp(const MetricParams& mp, const GeodesicState& start, double t_end, int steps);

/// Composite Simpson quadrature of √g(γ̇, γ̇) over a uniformly spaced trace.
double path_length(const MetricParams& mp, const GeodesicTrace& trace);

// ---- closed-form families -------------------------------------------------

/// n = 1 cosh/tanh geodesic: D = (2/a²)cosh²(bt+c), u = σ(a·k·tanh(bt+c) + d),
/// k = √((1+2α)/β), σ = ±1 (−1 when solved in the reflected frame u ↦ −u).
struct N1Coefficients {
    double a, b, c, d, k, sign;
};

/// D₀^{1/2} exp(tL) D₀^{1/2} with constant u.
struct SpecialNormalCoefficients {
    Matrix d0_sqrt;
    SymMatrix L;
    Vector u;
};

/// π_β⁻¹ of the Siegel geodesic S₀^{1/2} exp(tL) S₀^{1/2} in P(n+1).
struct Alpha0Coefficients {
    double beta;
    Matrix s0_sqrt;
    SymMatrix L;
};

/// ((2/‖A‖²) U cosh²(Bt+C) Uᵀ, √(n/β) U tanh(Bt+C) A + offset), B and C diagonal.
struct DiagonalCoefficients {
    double beta;
    Matrix U;
    Vector A, B, C, offset;
};

enum class ClosedFamily { n1, special_normal, alpha0_pullback, diagonal_family };
std::string_view to_string(ClosedFamily f) noexcept;

class ClosedGeodesic {
public:
    using Coefficients =
        std::variant<N1Coefficients, SpecialNormalCoefficients, Alpha0Coefficients, DiagonalCoefficients>;

    explicit ClosedGeodesic(Coefficients c) : coeffs_(std::move(c)) {}

    ClosedFamily family() const noexcept;
    const Coefficients& coefficients() const noexcept { return coeffs_; }

    Point at(double t) const;
    Tangent velocity(double t) const;
    GeodesicState state(double t) const { return {at(t), velocity(t)}; }

private:
    Coefficients coeffs_;
};

/// ‖γ̈ + Γ(γ̇)(γ̇)‖_max at t, with γ̈ by a five-point central difference of
/// the exact velocity.
double closed_ode_residual(const ClosedGeodesic& g, const MetricParams& mp, double t, double h = 1e-4);

/// Uniform samples of a closed geodesic with exact velocities.
GeodesicTrace sample_closed(const ClosedGeodesic& g, const MetricParams& mp, double t0, double t1, int steps);

struct ClosedGeodesicResult {
    ClosedGeodesic curve;
    double distance;
};

/// Two points of Ξ₁ joined by the cosh/tanh family (u₁ < u₀ by reflection,
/// u₁ = u₀ by the one-dimensional special-normal curve).
ClosedGeodesicResult geodesic_n1(const MetricParams& mp, const Point& p0, const Point& p1);

ClosedGeodesic geodesic_special_normal(const SpdMatrix& D0, const SpdMatrix& D1);
ClosedGeodesic geodesic_special_normal(const SpdMatrix& D0, const SpdMatrix& D1, const Vector& u);

/// √(½Tr L² + α Tr²L)·√scale, L = log(D₀^{-1/2} D₁ D₀^{-1/2}).
double distance_special_normal(const MetricParams& mp, const SpdMatrix& D0, const SpdMatrix& D1);

SpdMatrix embed_pi_beta(double beta, const Point& pt);
Point unembed_pi_beta(double beta, const SpdMatrix& S);

/// Siegel distance √(½Tr log²(S₀^{-1/2}S₁S₀^{-1/2})) between π_β images.
double siegel_embedding_distance(double beta, const Point& p0, const Point& p1);

/// Pull-back of the Siegel geodesic. Throws nonexistence when the embedded
/// curve leaves the image of π_β (its corner entry drifts from β).
ClosedGeodesicResult geodesic_alpha0(double beta, const Point& p0, const Point& p1);

/// Largest |S(t)_{n+1,n+1} − β| / β over 64 samples of the embedded curve.
double alpha0_departure(double beta, const Point& p0, const Point& p1);

/// Validates the structural conditions (U orthogonal, UA = A, A with equal
/// nonzero components, B with at most one nonzero entry, β > 0).
ClosedGeodesic geodesic_diagonal_family(double beta, const Matrix& U, const Vector& A, const Vector& B,
                                        const Vector& C, const Vector& offset);
double diagonal_family_distance(const Vector& B, double t0, double t1);

/// Damped Newton on the chart mismatch of the t = 1 endpoint. Returns the
/// start state whose velocity reaches p1.
GeodesicState geodesic_bvp_shoot(const MetricParams& mp, const Point& p0, const Point& p1, double tol = 1e-10,
                                 int steps = 1000);

/// CSV: t, upper triangle of D row-major, u; 17 significant digits.
void write_trace_csv(std::ostream& os, const GeodesicTrace& trace);

}  // namespace infogeo
