#pragma once

#include "infogeo/family.hpp"

#include <optional>
#include <string>
#include <variant>

namespace infogeo {

/// Element (X, x) of T = Sym(n) × ℝⁿ.
struct Tangent {
    SymMatrix X;
    Vector x;

    Tangent(SymMatrix X, Vector x);
    explicit Tangent(SymMatrix X);  // x = 0
    static Tangent zero(int n);

    int dim() const noexcept { return X.dim(); }
    double max_abs() const;

    Tangent& operator+=(const Tangent& o);
    Tangent& operator-=(const Tangent& o);
    Tangent& operator*=(double s);
    friend Tangent operator+(Tangent a, const Tangent& b) { return a += b; }
    friend Tangent operator-(Tangent a, const Tangent& b) { return a -= b; }
    friend Tangent operator*(Tangent a, double s) { return a *= s; }
    friend Tangent operator*(double s, Tangent a) { return a *= s; }
    friend Tangent operator-(Tangent a) { return a *= -1.0; }
};

/// Point displaced along a tangent: (D + tX, u + t x). Domain error if D + tX
/// leaves the SPD cone.
Point displace(const Point& pt, const Tangent& v, double t = 1.0);

/// scale · [½Tr(D⁻¹XD⁻¹Y) + α Tr(D⁻¹X)Tr(D⁻¹Y) + β⟨x,Dy⟩]
struct MetricParams {
    double alpha = 0.0;
    double beta = 1.0;
    double scale = 1.0;
};

enum class Signature { riemannian, semi_riemannian, degenerate };
std::string_view to_string(Signature s) noexcept;

Signature signature(const MetricParams& mp, int n);

/// Throws degenerate_metric when α = −1/(2n) (1 + 2nα vanishes).
void require_nondegenerate(const MetricParams& mp, int n);

double unified_eval(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b);

namespace metrics {
struct Renyi {};
struct Tsallis { double p = 1.0; double q = 1.0; };
struct Fisher { double p = 1.0; };
struct CalvoOller { double beta = 1.0; };
struct LMR {};
struct Unified { MetricParams params; };
struct KuboMori {};
struct Largest {};
}  // namespace metrics

using MetricSpec = std::variant<metrics::Renyi, metrics::Tsallis, metrics::Fisher, metrics::CalvoOller,
                                metrics::LMR, metrics::Unified, metrics::KuboMori, metrics::Largest>;

std::string metric_name(const MetricSpec& spec);

/// Named closed forms. The Rényi, Kubo–Mori and largest metrics only see the
/// matrix parts of the tangents.
double named_eval(const MetricSpec& spec, const Point& pt, const Tangent& a, const Tangent& b);

/// (α, β, scale) with named_eval ≡ unified_eval, when one exists. Rényi maps
/// to β = 0. Tsallis with q ≠ 1, Kubo–Mori and largest are not representable.
std::optional<MetricParams> as_unified(const MetricSpec& spec, int n);

/// A′_{n,p,q}: g^(T,p,q) = A′ det(D)^{(q−1)/2}(Tr(D⁻¹XD⁻¹Y) − ((q−1)/2)Tr(D⁻¹X)Tr(D⁻¹Y)).
double tsallis_form_constant(const FamilyParams& fp, double q);

/// Convex φ with φ(1) = 0, evaluated through the log-ratio d = log(f₂/f₁).
struct CsiszarPhi {
    enum class Kind { kl, hellinger, alpha_relative };
    Kind kind = Kind::kl;
    double alpha = 0.0;  // alpha_relative only, |α| < 1

    static CsiszarPhi kl() { return {Kind::kl, 0.0}; }
    static CsiszarPhi hellinger() { return {Kind::hellinger, 0.0}; }
    static CsiszarPhi alpha_relative(double a);

    double operator()(double ratio) const;
    double of_log_ratio(double d) const;
    /// f₁·φ(f₂/f₁) from log f₁ and log f₂, finite where f₁ underflows.
    double weighted(double log_f1, double log_f2) const;
    double second_derivative_at_one() const;
    std::string name() const;
};

/// ∫ f₁ φ(f₂/f₁) over Dom(pt1) on the oracle grid.
double csiszar_divergence(const CsiszarPhi& phi, const FamilyParams& fp, const Point& pt1, const Point& pt2,
                          int resolution = 16);

/// Mixed central second difference of H(pt, pt + t·a + s·b) at t = s = 0,
/// one Richardson step (h, h/2).
double csiszar_induced_form(const CsiszarPhi& phi, const FamilyParams& fp, const Point& pt, const Tangent& a,
                            const Tangent& b, double h = 1e-3, int resolution = 16);

/// Σ_ij k(λ_i, λ_j) X'_ij Y'_ij in the eigenbasis of D, k = Δlog λ / Δλ.
double kubo_mori_eval(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y);

/// Tr(D^{-1/2} X D⁻¹ Y D^{1/2}).
double largest_eval(const SpdMatrix& D, const SymMatrix& X, const SymMatrix& Y);

}  // namespace infogeo
