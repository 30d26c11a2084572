#pragma once

#include "infogeo/family.hpp"

#include <functional>
#include <vector>

namespace infogeo {

struct QuadratureNode {
    Vector x;
    double weight = 0.0;  // includes the det(D)^{-1/2} whitening Jacobian
    double margin = 1.0;  // 1 − (ρ/R)² for compact support, 1 otherwise
};

/// Nodes over Dom(p,D,u) for n ≤ 2.
///
/// Whitened polar coordinates x = u + D^{-1/2}·ρθ. The radius is graded,
/// ρ = R(1 − e^{-s}) on a compact support of radius R (found by bisection on
/// in_support) and ρ = e^s − 1 on ℝⁿ, with s ∈ [0, r] covered by 8-point
/// Gauss–Legendre panels of width 4/r. Angles: ±1 for n = 1, a 2r-point
/// periodic trapezoid for n = 2.
struct QuadratureGrid {
    std::vector<QuadratureNode> nodes;
    int resolution = 0;
    bool compact = false;
    double radius = 0.0;  // whitened support radius (compact only)
};

/// Radius of Dom(p,D,u) in whitened coordinates, by bisection on in_support;
/// +∞ for non-compact members.
double whitened_support_radius(const FamilyParams& fp, const Point& pt);

QuadratureGrid make_grid(const FamilyParams& fp, const Point& pt, int resolution);

enum class Execution { serial, parallel };

using NodeFunction = std::function<double(const QuadratureNode&)>;

/// Σ w·f(node). Both execution modes evaluate the same terms and sum them in
/// node order (compensated), so the result is independent of the thread count.
/// Non-finite terms raise numerical_failure.
double integrate(const QuadratureGrid& grid, const NodeFunction& f,
                 Execution mode = Execution::parallel);

/// Threads used by Execution::parallel: INFOGEO_THREADS if set, else the
/// OpenMP default.
int worker_count();

/// Compensated (Neumaier) sum in index order.
double ordered_sum(const std::vector<double>& terms);

}  // namespace infogeo
