#include "infogeo/quadrature.hpp"

#include "infogeo/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <string>

namespace infogeo {

namespace {

using GL8 = boost::math::quadrature::gauss<double, 8>;

// Whitened support radius: bisection on in_support along one axis. The
// support is a sphere in whitened coordinates, so any direction works.
double support_radius(const FamilyParams& fp, const Point& pt, const Matrix& whiten_inv) {
    const Vector dir = whiten_inv.col(0);
    auto inside = [&](double rho) { return in_support(fp, pt, Vector(pt.u + rho * dir)); };
    double lo = 0.0, hi = 1.0;
    while (inside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e150) fail(ErrorCode::numerical_failure, "support radius bracket failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace

double whitened_support_radius(const FamilyParams& fp, const Point& pt) {
    if (!fp.compact()) return std::numeric_limits<double>::infinity();
    return support_radius(fp, pt, pt.D.inv_sqrt());
}

QuadratureGrid make_grid(const FamilyParams& fp, const Point& pt, int resolution) {
    const int n = fp.n;
    if (n > 2) fail(ErrorCode::domain, "grid quadrature supports n <= 2");
    if (pt.dim() != n) fail(ErrorCode::domain, "dimension mismatch between family and point");
    if (resolution < 2) fail(ErrorCode::domain, "quadrature resolution must be at least 2");

    QuadratureGrid grid;
    grid.resolution = resolution;
    grid.compact = fp.compact();
    const Matrix whiten_inv = pt.D.inv_sqrt();
    const double jac = std::exp(-0.5 * pt.D.log_det());
    if (grid.compact) grid.radius = support_radius(fp, pt, whiten_inv);

    // Radial nodes in s with the graded map folded into the weight.
    struct Radial { double rho, w, margin; };
    std::vector<Radial> radial;
    const double s_max = resolution;
    const double width = 4.0 / resolution;
    const int panels = static_cast<int>(std::lround(s_max / width));
    for (int k = 0; k < panels; ++k) {
        const double mid = (k + 0.5) * width, half = 0.5 * width;
        auto push = [&](double t, double w) {
            const double s = mid + half * t;
            const double es = std::exp(-s);
            Radial r;
            if (grid.compact) {
                r.rho = grid.radius * (1.0 - es);
                r.w = grid.radius * es;
                r.margin = es * (2.0 - es);
            } else {
                r.rho = std::expm1(s);
                r.w = std::exp(s);
                r.margin = 1.0;
            }
            r.w *= w * half * std::pow(r.rho, n - 1);
            radial.push_back(r);
        };
        for (size_t i = 0; i < GL8::abscissa().size(); ++i) {
            push(GL8::abscissa()[i], GL8::weights()[i]);
            push(-GL8::abscissa()[i], GL8::weights()[i]);
        }
    }

    std::vector<std::pair<Vector, double>> dirs;
    if (n == 1) {
        dirs.emplace_back(Vector::Constant(1, 1.0), 1.0);
        dirs.emplace_back(Vector::Constant(1, -1.0), 1.0);
    } else {
        const int m = 2 * resolution;
        for (int j = 0; j < m; ++j) {
            const double th = 2.0 * std::numbers::pi * j / m;
            Vector d(2);
            d << std::cos(th), std::sin(th);
            dirs.emplace_back(d, 2.0 * std::numbers::pi / m);
        }
    }

    grid.nodes.reserve(radial.size() * dirs.size());
    for (const auto& r : radial)
        for (const auto& [d, wd] : dirs)
            grid.nodes.push_back({pt.u + whiten_inv * (r.rho * d), jac * r.w * wd, r.margin});
    return grid;
}

int worker_count() {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("INFOGEO_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) cap = static_cast<int>(v);
    }
    return cap;
}

double ordered_sum(const std::vector<double>& terms) {
    double sum = 0.0, comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        comp += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
        sum = s;
    }
    return sum + comp;
}

double integrate(const QuadratureGrid& grid, const NodeFunction& f, Execution mode) {
    const auto count = static_cast<std::ptrdiff_t>(grid.nodes.size());
    std::vector<double> terms(grid.nodes.size());
    auto term = [&](std::ptrdiff_t i) {
        const auto& node = grid.nodes[static_cast<size_t>(i)];
        return node.weight * f(node);
    };

    if (mode == Execution::serial) {
        for (std::ptrdiff_t i = 0; i < count; ++i) terms[static_cast<size_t>(i)] = term(i);
    } else {
        std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(worker_count())
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                terms[static_cast<size_t>(i)] = term(i);
            } catch (...) {
#pragma omp critical(infogeo_quadrature_error)
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
    }

    for (double t : terms)
        if (!std::isfinite(t)) fail(ErrorCode::numerical_failure, "non-finite integrand value");
    return ordered_sum(terms);
}

}  // namespace infogeo
