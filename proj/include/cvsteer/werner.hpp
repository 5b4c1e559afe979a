#ifndef CVSTEER_WERNER_HPP
#define CVSTEER_WERNER_HPP

#include "cvsteer/gaussian.hpp"
#include "cvsteer/pseudospin.hpp"

namespace cvsteer {

/// Continuous-variable Werner state: mixture of an EPR state with squeezing
/// s (weight p) and a product of two thermal states with parameter u.
struct WernerParams {
    double p{1.0};
    double s{0.0};
    double u{0.0};

    /// Convenience constructor on the u = s diagonal.
    static WernerParams diagonal(double p, double s) { return {p, s, s}; }
};

void validate(const WernerParams& wp);

/// Steering-threshold probability. When the family is never steerable (or
/// rounding pushes the closed form above 1) the value is clamped to 1 and
/// flagged.
struct PThreshold {
    double value{1.0};
    bool never_steerable{false};
};

/// Type-i correlators: xx = p tanh(2s), yy = -xx,
/// zz = p tanh^2(2u) + 1 - tanh^2(2u).
CorrelatorTriple werner_type_i_correlators(const WernerParams& wp);

/// Type-ii correlators: xx = yy = (2p/pi) gd(2s),
/// zz = p + (1-p) sech^2(2u).
CorrelatorTriple werner_type_ii_correlators(const WernerParams& wp);

/// Threshold for steering detection by the type-i moment criterion,
///   p > [sqrt(w(w - 2v^2 w + 4v^2)) - w(1-w)] / (2v^2 + w^2),
/// with v = tanh(2s), w = tanh^2(2u). For s = u = 0 the family is separable
/// and the result is flagged never-steerable.
PThreshold p_steer_type_i(double s, double u);

/// Threshold for the type-ii moment criterion,
///   p > [sqrt(w(pi^2 w + 8(2-w) gd^2(2s))) - pi w(1-w)]
///         / ((8/pi) gd^2(2s) + pi w^2).
PThreshold p_steer_type_ii(double s, double u);

/// Covariance of the Werner mixture: a = b = p cosh(2s) + (1-p) cosh(2u),
/// c = -d = p sinh(2s).
StandardForm werner_covariance(const WernerParams& wp);

/// Threshold for steering detection by Gaussian measurements, the closed
/// form of the root of a = a^2 - c^2 in p (with c_s = cosh 2s,
/// c_u = cosh 2u). On the diagonal u = s it reduces to
/// 1/sqrt(1 + sech(2s)).
PThreshold p_steer_gaussian(double s, double u);

/// Left side of the type-i threshold quadratic
///   p^2 + 2w(1-w)/(2v^2+w^2) p - w(2-w)/(2v^2+w^2);
/// zero at p = p_steer_type_i. Exposed for consistency checks.
double type_i_threshold_quadratic(double p, double s, double u);

}  // namespace cvsteer

#endif
