#pragma once

#include <stdexcept>
#include <string>

namespace modband {

enum class ErrorKind {
    precondition,
    grid_mismatch,
    conjugate_symmetry,
    resolution,
    partition,
    unavailable,
    insufficient_length,
    insufficient_data,
    degenerate_partition,
    unsupported_mode,
    ill_conditioned,
    length_mismatch,
    domain_too_large,
    parse,
    infeasible,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace modband
