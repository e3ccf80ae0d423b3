#include "skinrecon/error.hpp"

namespace skinrecon {

std::string_view category_name(ErrorCategory c) noexcept {
    switch (c) {
        case ErrorCategory::invalid_argument: return "invalid-argument";
        case ErrorCategory::invalid_reading: return "invalid-reading";
        case ErrorCategory::singular_point: return "singular-point";
        case ErrorCategory::unsupported_model: return "unsupported-model";
        case ErrorCategory::numerical_failure: return "numerical-failure";
        case ErrorCategory::non_convergence: return "non-convergence";
        case ErrorCategory::resource_limit: return "resource-limit";
        case ErrorCategory::oracle_failure: return "oracle-failure";
        case ErrorCategory::io_error: return "io-error";
    }
    return "unknown";
}

int exit_code(ErrorCategory c) noexcept {
    // 1 is left to CLI11 for usage errors.
    return 10 + static_cast<int>(c);
}

}  // namespace skinrecon
