#pragma once

#include <stdexcept>
#include <string>

namespace gqtm {

enum class ErrorCode {
    invalid_argument,
    malformed_counter,
    degenerate_state,
    horizon_exhausted,
    corrupted_operator,
    resource_exhausted,
    out_of_band,
    dimension_mismatch,
    not_normalized,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type for the library; the C API maps `code()` onto
/// its status enum.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace gqtm
