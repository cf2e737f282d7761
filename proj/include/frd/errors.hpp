#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace frd {

namespace detail {
inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}
}  // namespace detail

/// Invalid parameter or configuration (CLI exit code 2).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical target could not be reached; carries the achieved error (CLI exit code 3).
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved error " + detail::sci(achieved) + ")"),
          achieved_error(achieved) {}
    double achieved_error;
};

/// Time stepping produced values outside the trusted range, or the front
/// approached the grid boundary (CLI exit code 4).
class instability_error : public std::runtime_error {
public:
    explicit instability_error(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point iteration failed to contract.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// A level crossing could not be located in a snapshot.
class tracking_error : public std::runtime_error {
public:
    explicit tracking_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace frd
