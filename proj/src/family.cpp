#include "infogeo/family.hpp"

#include "infogeo/error.hpp"
#include "infogeo/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace infogeo {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dim(const FamilyParams& fp, int n) {
    if (fp.n != n) fail(ErrorCode::domain, "dimension mismatch between family and point");
}

// Whitened quadratic form ⟨x−u, D(x−u)⟩.
double quad_form(const Point& pt, const Vector& x) {
    if (x.size() != pt.u.size()) fail(ErrorCode::domain, "sample point has wrong dimension");
    const Vector d = x - pt.u;
    return d.dot(pt.D.matrix() * d);
}

// Exponent of the kernel: m = 1/(p−1) for p>1, k = 1/(1−p) for p<1.
double kernel_exponent(const FamilyParams& fp) { return 1.0 / std::abs(fp.p - 1.0); }

// log ∫ kernel(|y|²)^q dy over ℝⁿ (whitened, D = I).
double log_kernel_power(const FamilyParams& fp, double q) {
    const double a = support_scale(fp);
    const double half_n = 0.5 * fp.n;
    const double e = kernel_exponent(fp);
    if (fp.compact())
        return half_n * std::log(kPi / a) + log_gamma(q * e + 1.0) - log_gamma(q * e + 1.0 + half_n);
    return half_n * std::log(kPi / a) + log_gamma(q * e - half_n) - log_gamma(q * e);
}

}  // namespace

FamilyParams::FamilyParams(int n_, double p_) : n(n_), p(p_) {
    if (n < 1) fail(ErrorCode::domain, "dimension n must be at least 1");
    const double lower = static_cast<double>(n) / (n + 2);
    if (!std::isfinite(p) || !(p > lower)) {
        std::ostringstream os;
        os << "p must exceed n/(n+2) = " << lower << ", got " << p;
        fail(ErrorCode::domain, os.str());
    }
}

Point::Point(SpdMatrix D_, Vector u_) : D(std::move(D_)), u(std::move(u_)) {
    if (u.size() != D.dim()) fail(ErrorCode::domain, "u and D have inconsistent dimensions");
    if (!u.allFinite()) fail(ErrorCode::domain, "u has non-finite entries");
}

Point::Point(SpdMatrix D_) : D(std::move(D_)), u(Vector::Zero(D.dim())) {}

std::string_view to_string(EntropyMethod m) noexcept {
    switch (m) {
        case EntropyMethod::closed_form: return "closed-form";
        case EntropyMethod::quadrature: return "quadrature";
        case EntropyMethod::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

double support_scale(const FamilyParams& fp) {
    if (fp.gaussian()) return 0.0;
    return std::abs(1.0 - fp.p) / (2.0 * fp.p - fp.n * (1.0 - fp.p));
}

bool in_support(const FamilyParams& fp, const Point& pt, const Vector& x) {
    check_dim(fp, pt.dim());
    const double qf = quad_form(pt, x);
    if (!fp.compact()) return true;
    return 1.0 - support_scale(fp) * qf >= 0.0;
}

double log_normalization_constant(const FamilyParams& fp) {
    const double half_n = 0.5 * fp.n;
    if (fp.gaussian()) return -half_n * std::log(2.0 * kPi);
    // Inverse of the unit-q kernel integral.
    return -log_kernel_power(fp, 1.0);
}

double normalization_constant(const FamilyParams& fp) {
    const double v = std::exp(log_normalization_constant(fp));
    if (!std::isfinite(v) || v <= 0.0) fail(ErrorCode::range, "normalization constant out of range");
    return v;
}

double log_density(const FamilyParams& fp, const Point& pt, const Vector& x) {
    check_dim(fp, pt.dim());
    const double qf = quad_form(pt, x);
    const double base_log = log_normalization_constant(fp) + 0.5 * pt.D.log_det();
    if (fp.gaussian()) return base_log - 0.5 * qf;
    const double a_signed = (1.0 - fp.p) / (2.0 * fp.p - fp.n * (1.0 - fp.p));
    const double kernel = 1.0 + a_signed * qf;
    if (kernel <= 0.0) return -std::numeric_limits<double>::infinity();
    return base_log + std::log(kernel) / (fp.p - 1.0);
}

double density(const FamilyParams& fp, const Point& pt, const Vector& x) {
    return std::exp(log_density(fp, pt, x));
}

double power_integral_lower_bound(const FamilyParams& fp) {
    if (fp.p < 1.0) return 0.5 * fp.n * (1.0 - fp.p);
    return 0.0;
}

double log_density_power_integral(const FamilyParams& fp, const SpdMatrix& D, double q) {
    check_dim(fp, D.dim());
    const double bound = power_integral_lower_bound(fp);
    if (!std::isfinite(q) || !(q > bound)) {
        std::ostringstream os;
        os << "integral of f^q diverges: q must exceed " << bound << " (got " << q << ")";
        fail(ErrorCode::domain, os.str());
    }
    const double half_n = 0.5 * fp.n;
    const double det_term = 0.5 * (q - 1.0) * D.log_det();
    if (fp.gaussian()) return half_n * (1.0 - q) * std::log(2.0 * kPi) - half_n * std::log(q) + det_term;
    return q * log_normalization_constant(fp) + log_kernel_power(fp, q) + det_term;
}

double density_power_integral(const FamilyParams& fp, const SpdMatrix& D, double q) {
    const double v = std::exp(log_density_power_integral(fp, D, q));
    if (!std::isfinite(v)) fail(ErrorCode::range, "integral of f^q overflows");
    return v;
}

EntropyValue renyi_entropy(const FamilyParams& fp, const SpdMatrix& D, double q) {
    if (q == 1.0) fail(ErrorCode::domain, "q = 1 is the Shannon entropy; use shannon_entropy");
    return {log_density_power_integral(fp, D, q) / (1.0 - q), q, EntropyMethod::closed_form};
}

EntropyValue shannon_entropy(const FamilyParams& fp, const SpdMatrix& D) {
    check_dim(fp, D.dim());
    const double half_n = 0.5 * fp.n;
    double s;
    if (fp.gaussian()) {
        s = half_n * std::log(2.0 * kPi * std::numbers::e);
    } else {
        // −d/dq log ∫f^q at q = 1; only the Gamma terms depend on q beyond log A.
        const double e = kernel_exponent(fp);
        const double dlogj = fp.compact() ? e * (digamma(e + 1.0) - digamma(e + 1.0 + half_n))
                                          : e * (digamma(e - half_n) - digamma(e));
        s = -log_normalization_constant(fp) - dlogj;
    }
    return {s - 0.5 * D.log_det(), 1.0, EntropyMethod::closed_form};
}

EntropyValue tsallis_entropy(const FamilyParams& fp, const SpdMatrix& D, double q) {
    if (q == 1.0) fail(ErrorCode::domain, "q = 1 is the Shannon entropy; use shannon_entropy");
    // expm1 keeps the quotient accurate as q → 1.
    return {std::expm1(log_density_power_integral(fp, D, q)) / (1.0 - q), q, EntropyMethod::closed_form};
}

std::vector<Vector> sample(const FamilyParams& fp, const Point& pt, int count, std::uint64_t seed) {
    check_dim(fp, pt.dim());
    if (count < 1) fail(ErrorCode::domain, "sample count must be positive");
    const int n = fp.n;
    const Matrix whiten_inv = pt.D.inv_sqrt();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Vector> out;
    out.reserve(static_cast<size_t>(count));

    auto gaussian_vector = [&] {
        Vector g(n);
        for (int i = 0; i < n; ++i) g[i] = normal(rng);
        return g;
    };

    if (fp.gaussian()) {
        for (int k = 0; k < count; ++k) out.push_back(pt.u + whiten_inv * gaussian_vector());
    } else if (!fp.compact()) {
        // Multivariate t: ν = 2k − n, y = z/√(aν) with z ~ t_ν.
        const double a = support_scale(fp);
        const double nu = 2.0 * kernel_exponent(fp) - n;
        std::chi_squared_distribution<double> chi2(nu);
        for (int k = 0; k < count; ++k) {
            const Vector g = gaussian_vector();
            const double w = chi2(rng);
            const Vector y = g / std::sqrt(w / nu) / std::sqrt(a * nu);
            out.push_back(pt.u + whiten_inv * y);
        }
    } else {
        // Uniform on the whitened ball of radius 1/√a, accept with (1 − a|y|²)^m.
        const double a = support_scale(fp);
        const double radius = 1.0 / std::sqrt(a);
        const double m = kernel_exponent(fp);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        while (static_cast<int>(out.size()) < count) {
            Vector g = gaussian_vector();
            const double norm = g.norm();
            if (norm == 0.0) continue;
            const double r = radius * std::pow(unif(rng), 1.0 / n);
            const Vector y = g * (r / norm);
            const double accept = std::pow(std::max(0.0, 1.0 - a * y.squaredNorm()), m);
            if (unif(rng) < accept) out.push_back(pt.u + whiten_inv * y);
        }
    }
    return out;
}

}  // namespace infogeo
