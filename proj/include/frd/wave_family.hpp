#pragma once

#include <memory>
#include <vector>

#include "frd/interp.hpp"
#include "frd/reaction.hpp"
#include "frd/stable_law.hpp"

namespace frd {

/// Speed and time-scale of one member of the traveling-wave family
/// U_tau(xi) = F(xi tau^(-1/alpha)), moving as u(x,t) = U_tau(x + c t).
struct WaveParams {
    double c = 0.0;
    double tau = 1.0;
};

/// Profile value F(xi tau^(-1/alpha)).
double wave_profile(const StableLaw& law, const WaveParams& wave, double xi);

/// The reaction pair induced by a stable law:
///   g0(z) = f(F^-1(z)),  g1(z) = F^-1(z) f(F^-1(z)).
/// Both extend continuously by 0 at z = 0, 1.
class ReactionPair {
public:
    explicit ReactionPair(std::shared_ptr<const StableLaw> law);

    const StableLaw& law() const { return *law_; }
    std::shared_ptr<const StableLaw> law_ptr() const { return law_; }

    double g0(double zeta) const;
    double g1(double zeta) const;

    /// c tau^(-1/a) g0(z) + (a tau)^(-1) g1(z); the wave's induced reaction.
    double combination(const WaveParams& wave, double zeta) const;

    /// Location of the combination's unique interior zero,
    /// u* = F(-c a tau^((a-1)/a)).
    double interior_zero(const WaveParams& wave) const;

private:
    std::shared_ptr<const StableLaw> law_;
};

/// g0/g1 sampled on a uniform zeta grid with monotone cubic interpolation;
/// the cheap variant for solver inner loops.
class CachedReactionPair {
public:
    explicit CachedReactionPair(const ReactionPair& pair, double dzeta = 1e-4);
    double g0(double zeta) const;
    double g1(double zeta) const;
    double combination(const WaveParams& wave, double zeta) const;

private:
    PchipInterp g0_;
    PchipInterp g1_;
    double alpha_;
};

/// Reaction built from the wave family's own combination; evaluation uses the
/// cached pair, endpoint data comes from the pair's asymptotics
/// (g1 slope -alpha at 0 gives g'(0) = -1/tau). dzeta controls cache spacing.
ReactionSpec combination_reaction(std::shared_ptr<const ReactionPair> pair,
                                  const WaveParams& wave, double dzeta = 1e-4);

enum class TauSearchMode { lower, upper };

struct TauSearchConfig {
    double tau_min = 1e-6;
    double tau_max = 1e12;
    double c_max = 1e6;            // upper mode sweeps c as well
    std::size_t grid_points = 10000;
    double slack = 1e-9;           // tolerated violation, absolute
    int refine_steps = 24;
};

struct TauSearchResult {
    bool found = false;
    double tau = 0.0;
    double c = 0.0;
    double max_violation = 0.0;  // worst (combination - g) when not found
    double zeta_at_max = 0.0;
    std::size_t verified_points = 0;
};

/// Worst violation of the one-sided bound between g and the combination.
/// mode lower: returns max over the grid of (combination - g)  (want <= 0);
/// mode upper: returns max over the grid of (g - combination).
/// The grid is uniform plus log-spaced points toward both endpoints.
double domination_violation(const ReactionPair& pair, const ReactionSpec& g,
                            const WaveParams& wave, TauSearchMode mode,
                            std::size_t grid_points, double* zeta_at_max = nullptr);

/// Search for tau (and c in upper mode) making the wave's reaction a
/// one-sided bound for g. Geometric sweep, bisection refinement, and a
/// final re-verification on a 4x finer grid.
/// Throws domain_error when g fails the mode's hypothesis checks.
TauSearchResult tau_search(const ReactionPair& pair, const ReactionSpec& g, double c,
                           TauSearchMode mode, const TauSearchConfig& config = {});

}  // namespace frd
