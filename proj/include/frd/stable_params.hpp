#pragma once

#include <cmath>
#include <complex>

#include "frd/errors.hpp"

namespace frd {

/// Parameters of a stable law in Zolotarev's (B) parametrization ((C) at alpha = 1),
/// together with the derived symbol parameter rho.
///
/// rho = beta * (alpha - 1 + sign(1 - alpha)) for alpha != 1, rho = beta at alpha = 1.
/// The admissible open ranges give |rho| < min(alpha, 2 - alpha).
struct StableParams {
    double alpha = 0;
    double beta = 0;
    double rho = 0;
};

inline StableParams make_params(double alpha, double beta) {
    if (!(alpha > 0.0) || !(alpha < 2.0)) {
        throw domain_error("alpha must lie in the open interval (0, 2), got " +
                           std::to_string(alpha));
    }
    if (!(beta > -1.0) || !(beta < 1.0)) {
        throw domain_error("beta must lie in the open interval (-1, 1), got " +
                           std::to_string(beta));
    }
    double rho;
    if (alpha == 1.0) {
        rho = beta;
    } else {
        rho = beta * (alpha - 1.0 + (alpha < 1.0 ? 1.0 : -1.0));
    }
    return StableParams{alpha, beta, rho};
}

/// Symbol of the generator: p(lambda) = |lambda|^alpha * exp(-i pi/2 sign(lambda) rho).
/// p(0) = 0, p(-lambda) = conj(p(lambda)), |p(1)| = 1.
inline std::complex<double> char_exponent(const StableParams& p, double lambda) {
    if (lambda == 0.0) return {0.0, 0.0};
    const double mag = std::pow(std::abs(lambda), p.alpha);
    const double phase = -0.5 * M_PI * (lambda > 0 ? 1.0 : -1.0) * p.rho;
    return {mag * std::cos(phase), mag * std::sin(phase)};
}

/// Characteristic function exp(-|lambda|^alpha omega(lambda)) = exp(-p(lambda)).
/// The case split defining omega collapses to the symbol via the rho relation.
inline std::complex<double> char_function(const StableParams& p, double lambda) {
    return std::exp(-char_exponent(p, lambda));
}

}  // namespace frd
