#include "modband/error.hpp"

namespace modband {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::grid_mismatch: return "grid-mismatch";
    case ErrorKind::conjugate_symmetry: return "conjugate-symmetry";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::partition: return "partition";
    case ErrorKind::unavailable: return "unavailable";
    case ErrorKind::insufficient_length: return "insufficient-length";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::degenerate_partition: return "degenerate-partition";
    case ErrorKind::unsupported_mode: return "unsupported-mode";
    case ErrorKind::ill_conditioned: return "ill-conditioned";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::domain_too_large: return "domain-too-large";
    case ErrorKind::parse: return "parse";
    case ErrorKind::infeasible: return "infeasible";
    }
    return "unknown";
}

}  // namespace modband
