#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace infogeo {

/// Machine-readable failure categories. The CLI echoes `to_string(code)`.
enum class ErrorCode {
    domain,             // parameter outside the region where a formula is defined
    range,              // overflow / underflow of an intermediate quantity
    numerical_failure,  // iteration cap hit, non-finite intermediate
    nonexistence,       // the requested object does not exist (Fisher metric for p >= 2)
    degenerate_metric,  // alpha == -1/(2n)
    not_a_distance,     // distance requested for a non-Riemannian metric
    step_failure,       // integrator left the SPD cone
    non_convergence,    // shooting did not converge
    validation,         // structural precondition violated
    parse,              // malformed input document
    usage               // bad command line
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace infogeo
