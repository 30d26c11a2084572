#include "infogeo/special.hpp"

#include "infogeo/error.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <string>

namespace infogeo {

double log_gamma(double x) {
    if (!(x > 0.0)) fail(ErrorCode::domain, "log-Gamma argument must be positive, got " + std::to_string(x));
    int sign = 0;
    // lgamma_r: the reentrant variant; plain lgamma writes the global signgam.
    const double v = ::lgamma_r(x, &sign);
    if (!std::isfinite(v)) fail(ErrorCode::range, "log-Gamma overflow at " + std::to_string(x));
    return v;
}

double digamma(double x) {
    if (!(x > 0.0)) fail(ErrorCode::domain, "digamma argument must be positive, got " + std::to_string(x));
    return boost::math::digamma(x);
}

}  // namespace infogeo
