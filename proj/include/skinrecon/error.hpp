#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace skinrecon {

enum class ErrorCategory {
    invalid_argument,
    invalid_reading,
    singular_point,
    unsupported_model,
    numerical_failure,
    non_convergence,
    resource_limit,
    oracle_failure,
    io_error,
};

/// Machine-readable name, e.g. "invalid-argument".
std::string_view category_name(ErrorCategory c) noexcept;

/// Process exit code used by the CLI for a given category (always nonzero).
int exit_code(ErrorCategory c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

[[noreturn]] inline void fail(ErrorCategory c, const std::string& what) {
    throw Error(c, what);
}

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorCategory::invalid_argument, what);
}

}  // namespace skinrecon
