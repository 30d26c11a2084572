#pragma once

namespace infogeo {

/// log Γ(x) for x > 0. Throws range if the result is not finite.
double log_gamma(double x);

/// ψ(x) = d/dx log Γ(x), x > 0.
double digamma(double x);

}  // namespace infogeo
