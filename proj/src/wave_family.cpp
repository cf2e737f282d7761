#include "frd/wave_family.hpp"

#include <algorithm>
#include <cmath>

#include "frd/errors.hpp"

namespace frd {

namespace {

void require_unit_interval(double zeta, const char* who) {
    if (!(zeta >= 0.0) || !(zeta <= 1.0)) {
        throw domain_error(std::string(who) + ": zeta must lie in [0,1], got " +
                           std::to_string(zeta));
    }
}

void require_positive_tau(double tau) {
    if (!(tau > 0.0)) throw domain_error("tau must be positive, got " + std::to_string(tau));
}

}  // namespace

double wave_profile(const StableLaw& law, const WaveParams& wave, double xi) {
    require_positive_tau(wave.tau);
    return law.cdf(xi * std::pow(wave.tau, -1.0 / law.alpha()));
}

ReactionPair::ReactionPair(std::shared_ptr<const StableLaw> law) : law_(std::move(law)) {
    if (!law_) throw domain_error("ReactionPair requires a law");
}

double ReactionPair::g0(double zeta) const {
    require_unit_interval(zeta, "g0");
    if (zeta == 0.0 || zeta == 1.0) return 0.0;
    return law_->density(law_->quantile(zeta));
}

double ReactionPair::g1(double zeta) const {
    require_unit_interval(zeta, "g1");
    if (zeta == 0.0 || zeta == 1.0) return 0.0;
    const double x = law_->quantile(zeta);
    return x * law_->density(x);
}

double ReactionPair::combination(const WaveParams& wave, double zeta) const {
    require_positive_tau(wave.tau);
    require_unit_interval(zeta, "combination");
    if (zeta == 0.0 || zeta == 1.0) return 0.0;
    const double a = law_->alpha();
    const double x = law_->quantile(zeta);
    const double f = law_->density(x);
    return wave.c * std::pow(wave.tau, -1.0 / a) * f + x * f / (a * wave.tau);
}

double ReactionPair::interior_zero(const WaveParams& wave) const {
    require_positive_tau(wave.tau);
    const double a = law_->alpha();
    return law_->cdf(-wave.c * a * std::pow(wave.tau, (a - 1.0) / a));
}

CachedReactionPair::CachedReactionPair(const ReactionPair& pair, double dzeta) {
    alpha_ = pair.law().alpha();
    const auto n = static_cast<std::size_t>(std::lround(1.0 / dzeta)) + 1;
    const double h = 1.0 / static_cast<double>(n - 1);
    std::vector<double> v0(n), v1(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = static_cast<double>(i) * h;
        v0[i] = (i == 0 || i + 1 == n) ? 0.0 : pair.g0(z);
        v1[i] = (i == 0 || i + 1 == n) ? 0.0 : pair.g1(z);
    }
    g0_ = PchipInterp(0.0, h, v0);
    g1_ = PchipInterp(0.0, h, v1);
}

double CachedReactionPair::g0(double zeta) const {
    if (zeta <= 0.0 || zeta >= 1.0) return 0.0;
    return g0_(zeta);
}

double CachedReactionPair::g1(double zeta) const {
    if (zeta <= 0.0 || zeta >= 1.0) return 0.0;
    return g1_(zeta);
}

double CachedReactionPair::combination(const WaveParams& wave, double zeta) const {
    if (zeta <= 0.0 || zeta >= 1.0) return 0.0;
    return wave.c * std::pow(wave.tau, -1.0 / alpha_) * g0_(zeta) +
           g1_(zeta) / (alpha_ * wave.tau);
}

ReactionSpec combination_reaction(std::shared_ptr<const ReactionPair> pair,
                                  const WaveParams& wave, double dzeta) {
    require_positive_tau(wave.tau);
    auto cached = std::make_shared<const CachedReactionPair>(*pair, dzeta);
    ReactionSpec r;
    r.g = [cached, wave](double u) { return cached->combination(wave, u); };
    r.gprime0 = -1.0 / wave.tau;  // (a tau)^-1 g1'(0) with g1 ~ -a z
    r.gprime1 = -1.0 / wave.tau;
    r.tag = "combination";
    return r;
}

double domination_violation(const ReactionPair& pair, const ReactionSpec& g,
                            const WaveParams& wave, TauSearchMode mode,
                            std::size_t grid_points, double* zeta_at_max) {
    std::vector<double> zetas;
    zetas.reserve(grid_points + 60);
    for (std::size_t i = 1; i < grid_points; ++i) {
        zetas.push_back(static_cast<double>(i) / static_cast<double>(grid_points));
    }
    // endpoint behavior is where the asymptotics bite; add log-spaced probes
    for (int i = 0; i < 25; ++i) {
        const double t = std::pow(10.0, -9.0 + 6.0 * i / 24.0);  // 1e-9 .. 1e-3
        zetas.push_back(t);
        zetas.push_back(1.0 - t);
    }
    double worst = -1e300;
    double worst_z = 0.0;
    for (double z : zetas) {
        const double comb = pair.combination(wave, z);
        const double gv = g(z);
        const double viol = mode == TauSearchMode::lower ? comb - gv : gv - comb;
        if (viol > worst) {
            worst = viol;
            worst_z = z;
        }
    }
    if (zeta_at_max) *zeta_at_max = worst_z;
    return worst;
}

namespace {

void check_lower_hypotheses(const ReactionPair& pair, const ReactionSpec& g) {
    const double alpha = pair.law().alpha();
    const double beta = pair.law().params().beta;
    const int n = 2000;
    if (alpha > 1.0) {
        // positive reaction with power growth c0 z^gamma, gamma < alpha/(alpha-1)
        for (int i = 1; i < n; ++i) {
            const double z = static_cast<double>(i) / n;
            if (!(g(z) > 0.0)) {
                throw domain_error("lower-mode hypothesis (alpha > 1) violated: g is not "
                                   "positive at zeta = " + std::to_string(z));
            }
        }
        double c0 = g.c0, gamma = g.gamma;
        if (!(c0 > 0.0)) {
            gamma = 1.0;
            c0 = 1e300;
            for (int i = 1; i <= n / 2; ++i) {
                const double z = static_cast<double>(i) / n;
                c0 = std::min(c0, g(z) / z);
            }
        }
        if (!(c0 > 1e-12)) {
            throw domain_error("lower-mode hypothesis (alpha > 1) violated: no power lower "
                               "bound near zero (c0 = 0)");
        }
        const double gamma_max = alpha / (alpha - 1.0);
        if (!(gamma < gamma_max)) {
            throw domain_error("lower-mode hypothesis (alpha > 1) violated: gamma = " +
                               std::to_string(gamma) + " is not below alpha/(alpha-1) = " +
                               std::to_string(gamma_max));
        }
        // verify the claimed bound on (0, 1/2]
        for (int i = 1; i <= n / 2; ++i) {
            const double z = static_cast<double>(i) / n;
            if (g(z) < 0.999 * c0 * std::pow(z, gamma)) {
                throw domain_error("lower-mode hypothesis (alpha > 1) violated: g < c0 z^gamma "
                                   "at zeta = " + std::to_string(z));
            }
        }
    } else if (alpha == 1.0) {
        for (int i = 1; i < n; ++i) {
            const double z = static_cast<double>(i) / n;
            if (!(g(z) > 0.0)) {
                throw domain_error("lower-mode hypothesis (alpha = 1) violated: g is not "
                                   "positive at zeta = " + std::to_string(z));
            }
        }
    } else {
        const double threshold = 0.5 * (1.0 - beta);  // F(0) for alpha < 1
        for (int i = 0; i <= n; ++i) {
            const double z = static_cast<double>(i) / n;
            if (g(z) < -1e-14) {
                throw domain_error("lower-mode hypothesis (alpha < 1) violated: g negative at "
                                   "zeta = " + std::to_string(z));
            }
            if (z >= threshold && z <= 1.0 - 1e-3 && !(g(z) > 0.0)) {
                throw domain_error("lower-mode hypothesis (alpha < 1) violated: g vanishes on "
                                   "[(1-beta)/2, 1) at zeta = " + std::to_string(z));
            }
        }
    }
}

void check_upper_hypotheses(const ReactionSpec& g) {
    if (!(g.gprime0 < 0.0)) {
        throw domain_error("upper-mode hypothesis violated: g'(0) must be negative, got " +
                           std::to_string(g.gprime0));
    }
    double support_end = g.one_minus_support;
    if (support_end >= 1.0) {
        // detect a vanishing right end on a grid
        support_end = 1.0;
        for (int i = 2000; i >= 1; --i) {
            const double z = static_cast<double>(i) / 2000.0;
            if (g(z) != 0.0) break;
            support_end = z;
        }
    }
    if (support_end > 1.0 - 1e-3) {
        throw domain_error("upper-mode hypothesis violated: g must vanish near zeta = 1 "
                           "(compress_to_lower_range produces an admissible reaction)");
    }
}

}  // namespace

TauSearchResult tau_search(const ReactionPair& pair, const ReactionSpec& g, double c,
                           TauSearchMode mode, const TauSearchConfig& config) {
    TauSearchResult res;
    res.c = c;

    auto violation = [&](double c_try, double tau_try, std::size_t grid, double* where) {
        return domination_violation(pair, g, WaveParams{c_try, tau_try}, mode, grid, where);
    };

    if (mode == TauSearchMode::lower) {
        check_lower_hypotheses(pair, g);
        double tau = 1.0;
        double viol = violation(c, tau, config.grid_points, &res.zeta_at_max);
        if (viol <= config.slack) {
            // passing at 1; halve toward the boundary of validity
            double lo = tau;
            while (lo > config.tau_min) {
                const double next = 0.5 * lo;
                if (violation(c, next, config.grid_points, nullptr) > config.slack) break;
                lo = next;
            }
            tau = lo;
        } else {
            double fail = tau;
            bool ok = false;
            while (tau < config.tau_max) {
                fail = tau;
                tau *= 2.0;
                viol = violation(c, tau, config.grid_points, &res.zeta_at_max);
                if (viol <= config.slack) {
                    ok = true;
                    break;
                }
            }
            if (!ok) {
                res.max_violation = viol;
                return res;
            }
            // refine toward the smallest certifiable tau
            double lo = fail, hi = tau;
            for (int i = 0; i < config.refine_steps; ++i) {
                const double mid = std::sqrt(lo * hi);
                if (violation(c, mid, config.grid_points, nullptr) <= config.slack) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            tau = hi;
        }
        // certificate re-check on a 4x finer grid
        for (int attempt = 0; attempt < 8; ++attempt) {
            const double fine = violation(c, tau, 4 * config.grid_points, &res.zeta_at_max);
            if (fine <= config.slack) {
                res.found = true;
                res.tau = tau;
                res.max_violation = fine;
                res.verified_points = 4 * config.grid_points;
                return res;
            }
            tau *= 2.0;
        }
        res.max_violation = violation(c, tau, 4 * config.grid_points, &res.zeta_at_max);
        return res;
    }

    // upper mode: outer sweep in c, inner sweep in tau
    check_upper_hypotheses(g);
    const double tau_floor = 1.01 / std::abs(g.gprime0);
    double best = 1e300;
    for (double c_try = std::max(c, 1.0); c_try <= config.c_max; c_try *= 2.0) {
        for (double tau = tau_floor; tau <= config.tau_max; tau *= 2.0) {
            double where;
            const double viol = violation(c_try, tau, config.grid_points, &where);
            if (viol <= config.slack) {
                const double fine = violation(c_try, tau, 4 * config.grid_points, &where);
                if (fine <= config.slack) {
                    res.found = true;
                    res.c = c_try;
                    res.tau = tau;
                    res.max_violation = fine;
                    res.verified_points = 4 * config.grid_points;
                    return res;
                }
            }
            if (viol < best) {  // report the least-violating candidate on failure
                best = viol;
                res.max_violation = viol;
                res.zeta_at_max = where;
            }
        }
    }
    return res;
}

}  // namespace frd
