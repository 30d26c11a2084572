#pragma once

#include "infogeo/linalg.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace infogeo {

/// (n, p) with p > n/(n+2). p == 1 is the Gaussian member.
struct FamilyParams {
    int n = 1;
    double p = 1.0;

    FamilyParams(int n, double p);

    bool gaussian() const noexcept { return p == 1.0; }
    bool compact() const noexcept { return p > 1.0; }
};

/// (D, u): inverse covariance and expectation.
struct Point {
    SpdMatrix D;
    Vector u;

    Point(SpdMatrix D, Vector u);
    explicit Point(SpdMatrix D);  // u = 0

    int dim() const noexcept { return D.dim(); }
};

enum class EntropyMethod { closed_form, quadrature, monte_carlo };
std::string_view to_string(EntropyMethod m) noexcept;

struct EntropyValue {
    double value = 0.0;
    double q = 1.0;
    EntropyMethod method = EntropyMethod::closed_form;
};

/// a = |1−p|/(2p − n(1−p)); 0 for the Gaussian member.
double support_scale(const FamilyParams& fp);

bool in_support(const FamilyParams& fp, const Point& pt, const Vector& x);

double normalization_constant(const FamilyParams& fp);
double log_normalization_constant(const FamilyParams& fp);

double density(const FamilyParams& fp, const Point& pt, const Vector& x);
/// −∞ outside the support.
double log_density(const FamilyParams& fp, const Point& pt, const Vector& x);

/// Lower bound on q for which ∫ f^q exists (exclusive).
double power_integral_lower_bound(const FamilyParams& fp);

/// ∫ f_p(D,u,x)^q dx. Domain error outside the existence region.
double density_power_integral(const FamilyParams& fp, const SpdMatrix& D, double q);
double log_density_power_integral(const FamilyParams& fp, const SpdMatrix& D, double q);

EntropyValue renyi_entropy(const FamilyParams& fp, const SpdMatrix& D, double q);
EntropyValue shannon_entropy(const FamilyParams& fp, const SpdMatrix& D);
EntropyValue tsallis_entropy(const FamilyParams& fp, const SpdMatrix& D, double q);

/// i.i.d. draws, deterministic in seed.
std::vector<Vector> sample(const FamilyParams& fp, const Point& pt, int count, std::uint64_t seed);

}  // namespace infogeo
