#pragma once

#include "infogeo/metric.hpp"

#include <string_view>
#include <vector>

namespace infogeo {

/// R(a, b, c) = dΓ(a)(b)(c) − dΓ(b)(a)(c) + Γ(a, Γ(b)c) − Γ(b, Γ(a)c), closed form.
Tangent riemann(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b, const Tangent& c);

/// dΓ(z)(a)(b): derivative of Γ(a)(b) along z.
Tangent connection_derivative(const MetricParams& mp, const Point& pt, const Tangent& z, const Tangent& a,
                              const Tangent& b);

/// The same tensor assembled from connection_derivative and Γ by its definition.
Tangent riemann_from_connection(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b,
                                const Tangent& c);

/// Trace over the first slot of R; independent of the metric scale.
double ricci(const MetricParams& mp, const Point& pt, const Tangent& a, const Tangent& b);

/// R̃ with g(R̃a, b) = Ric(a, b).
Tangent ricci_operator(const MetricParams& mp, const Point& pt, const Tangent& a);

double scalar_full(const MetricParams& mp, int n);
/// Trace of the Ricci operator over the Sym(n) directions only.
double scalar_special(const MetricParams& mp, int n);

/// Σ_k coord_k(R̃(basis_k)) over sym_basis(n) ∪ {e_i} (or the Sym(n) part only).
double scalar_from_trace(const MetricParams& mp, const Point& pt, bool special = false);

double fisher_scalar_extended(int n, double p);

/// rⁿπ^{n/2}/Γ(n/2+1)·(1 − scal·r²/(6(n+2)))
double ball_volume(int n, double scal, double r);

enum class CurvatureMethod { closed_form, finite_difference };
std::string_view to_string(CurvatureMethod m) noexcept;

struct CurvatureReport {
    Point point;
    MetricParams mp;
    double scalar = 0.0;
    std::vector<double> ricci_eigenvalues;  // of R̃, descending
    CurvatureMethod method = CurvatureMethod::closed_form;
};

CurvatureReport curvature_report(const MetricParams& mp, const Point& pt);

}  // namespace infogeo
