#pragma once

#include <stdexcept>
#include <string>

namespace qubitline {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a channel fails the complete-positivity gate.
struct cptp_error : error {
    cptp_error(const std::string& what, double min_eig)
        : error(what), min_eigenvalue(min_eig) {}
    double min_eigenvalue;
};

struct parse_error : error {
    using error::error;
};

}  // namespace qubitline
