#include "frd/reaction.hpp"

#include <algorithm>
#include <cmath>

#include "frd/errors.hpp"

namespace frd {

double ReactionSpec::lipschitz() const {
    const int n = 4000;
    double worst = std::max(std::abs(gprime0), std::abs(gprime1));
    double prev = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double v = (*this)(u);
        worst = std::max(worst, std::abs(v - prev) * n);
        prev = v;
    }
    return worst;
}

ReactionSpec kpp_logistic() {
    ReactionSpec r;
    r.g = [](double u) { return u * (1.0 - u); };
    r.gprime0 = 1.0;
    r.gprime1 = -1.0;
    r.tag = "kpp-logistic";
    r.c0 = 0.5;  // u(1-u) >= u/2 on (0, 1/2]
    r.gamma = 1.0;
    return r;
}

ReactionSpec power_kpp(double c0, double gamma) {
    if (!(c0 > 0.0) || !(gamma >= 1.0)) {
        throw domain_error("power-kpp requires c0 > 0 and gamma >= 1");
    }
    ReactionSpec r;
    r.g = [c0, gamma](double u) { return c0 * std::pow(u, gamma) * (1.0 - u); };
    r.gprime0 = gamma == 1.0 ? c0 : 0.0;
    r.gprime1 = -c0;
    r.tag = "power-kpp";
    r.c0 = 0.5 * c0;  // c0 u^g (1-u) >= (c0/2) u^g on (0, 1/2]
    r.gamma = gamma;
    return r;
}

ReactionSpec bistable_cubic(double a, double scale) {
    if (!(a > 0.0) || !(a < 1.0)) throw domain_error("bistable threshold must lie in (0,1)");
    ReactionSpec r;
    r.g = [a, scale](double u) { return scale * u * (u - a) * (1.0 - u); };
    r.gprime0 = -scale * a;
    r.gprime1 = -scale * (1.0 - a);
    r.tag = "bistable";
    return r;
}

ReactionSpec threshold_kpp(double a, double scale) {
    if (!(a > 0.0) || !(a < 1.0)) throw domain_error("threshold must lie in (0,1)");
    ReactionSpec r;
    r.g = [a, scale](double u) {
        if (u <= a) return 0.0;
        const double d = u - a;
        return scale * d * d * (1.0 - u);
    };
    r.gprime0 = 0.0;
    r.gprime1 = 0.0;
    r.tag = "threshold-kpp";
    return r;
}

ReactionSpec compress_to_lower_range(const ReactionSpec& g, double s) {
    if (!(s > 0.0) || !(s < 1.0)) throw domain_error("compression level must lie in (0,1)");
    ReactionSpec r;
    auto inner = g;  // capture by value; ReactionSpec is cheap to copy
    r.g = [inner, s](double u) {
        if (u >= s) return 0.0;
        return s * inner(u / s);
    };
    r.gprime0 = g.gprime0;
    r.gprime1 = 0.0;
    r.tag = g.tag + "-compressed";
    r.one_minus_support = s;
    return r;
}

}  // namespace frd
