#include "infogeo/error.hpp"

namespace infogeo {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::domain: return "domain";
        case ErrorCode::range: return "range";
        case ErrorCode::numerical_failure: return "numerical_failure";
        case ErrorCode::nonexistence: return "nonexistence";
        case ErrorCode::degenerate_metric: return "degenerate_metric";
        case ErrorCode::not_a_distance: return "not_a_distance";
        case ErrorCode::step_failure: return "step_failure";
        case ErrorCode::non_convergence: return "non_convergence";
        case ErrorCode::validation: return "validation";
        case ErrorCode::parse: return "parse";
        case ErrorCode::usage: return "usage";
    }
    return "unknown";
}

}  // namespace infogeo
