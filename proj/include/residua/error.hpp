#pragma once

#include <stdexcept>
#include <string>

namespace residua {

enum class errc {
    parse_error,
    arity_error,
    ring_mismatch,
    frame_mismatch,
    non_isolated_zero,
    not_quasi_homogeneous,
    not_in_ideal,
    singular_on_sphere,
    resolution_too_coarse,
    convention_mismatch,
    invalid_argument,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
        case errc::parse_error: return "PARSE_ERROR";
        case errc::arity_error: return "ARITY_ERROR";
        case errc::ring_mismatch: return "RING_MISMATCH";
        case errc::frame_mismatch: return "FRAME_MISMATCH";
        case errc::non_isolated_zero: return "NON_ISOLATED_ZERO";
        case errc::not_quasi_homogeneous: return "NOT_QUASI_HOMOGENEOUS";
        case errc::not_in_ideal: return "NOT_IN_IDEAL";
        case errc::singular_on_sphere: return "SINGULAR_ON_SPHERE";
        case errc::resolution_too_coarse: return "RESOLUTION_TOO_COARSE";
        case errc::convention_mismatch: return "CONVENTION_MISMATCH";
        case errc::invalid_argument: return "INVALID_ARGUMENT";
        case errc::internal: return "INTERNAL";
    }
    return "UNKNOWN";
}

/// Library-wide exception. Parse errors carry a 1-based source position.
class error : public std::runtime_error {
public:
    error(errc code, std::string msg, int line = 0, int col = 0)
        : std::runtime_error(std::move(msg)), code_(code), line_(line), col_(col) {}

    errc code() const { return code_; }
    int line() const { return line_; }
    int col() const { return col_; }

private:
    errc code_;
    int line_;
    int col_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

} // namespace residua
