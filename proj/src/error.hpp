#pragma once

#include <stdexcept>
#include <string>

namespace fairclust {

enum class errc {
    invalid_argument = 1,
    dimension_mismatch,
    unbalanced_dataset,
    infeasible,
    too_large,
    unsupported,
    parse_error,
    io_error,
    internal_error,
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace fairclust
