#pragma once

#include <functional>
#include <string>

namespace frd {

/// A C1 reaction term g on [0,1] with g(0) = g(1) = 0, plus the endpoint
/// derivatives and growth data that hypothesis checks need. Evaluation
/// outside [0,1] extends by zero.
struct ReactionSpec {
    std::function<double(double)> g;
    double gprime0 = 0.0;
    double gprime1 = 0.0;
    std::string tag = "custom";
    // lower bound g(u) >= c0 u^gamma on (0, 1/2], when known (power growth data)
    double c0 = 0.0;
    double gamma = 1.0;
    // g vanishes on [one_minus_support, 1]
    double one_minus_support = 1.0;

    double operator()(double u) const {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return g(u);
    }

    /// max |g'| on [0,1], estimated on a fine grid; used for time-step budgets.
    double lipschitz() const;
};

ReactionSpec kpp_logistic();
ReactionSpec power_kpp(double c0, double gamma);
ReactionSpec bistable_cubic(double a, double scale = 1.0);
ReactionSpec threshold_kpp(double a, double scale = 1.0);

/// The reduction used for finite-speed bounds: h(u) = s * g(u/s) on [0, s],
/// zero on (s, 1]. Keeps g'(0) and makes the reaction vanish near 1.
ReactionSpec compress_to_lower_range(const ReactionSpec& g, double s = 0.5);

}  // namespace frd
