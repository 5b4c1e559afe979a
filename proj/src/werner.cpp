#include "cvsteer/werner.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvsteer/mathutil.hpp"

namespace cvsteer {

void validate(const WernerParams& wp) {
    if (!(wp.p >= 0.0 && wp.p <= 1.0)) {
        throw std::invalid_argument("WernerParams: p must lie in [0,1]");
    }
    if (!(wp.s >= 0.0)) {
        throw std::invalid_argument("WernerParams: s must be >= 0");
    }
    if (!(wp.u >= 0.0)) {
        throw std::invalid_argument("WernerParams: u must be >= 0");
    }
}

namespace {

PThreshold clamp_threshold(double raw) {
    PThreshold th;
    if (!(raw <= 1.0)) {  // also catches NaN
        th.value = 1.0;
        th.never_steerable = true;
    } else {
        th.value = std::max(raw, 0.0);
    }
    return th;
}

}  // namespace

CorrelatorTriple werner_type_i_correlators(const WernerParams& wp) {
    validate(wp);
    const double v = std::tanh(2.0 * wp.s);
    const double w = std::tanh(2.0 * wp.u) * std::tanh(2.0 * wp.u);
    CorrelatorTriple c;
    c.xx = wp.p * v;
    c.yy = -wp.p * v;
    c.zz = wp.p * w + 1.0 - w;
    return c;
}

CorrelatorTriple werner_type_ii_correlators(const WernerParams& wp) {
    validate(wp);
    const double gd = gudermannian(2.0 * wp.s);
    const double sech2u = 1.0 / std::cosh(2.0 * wp.u);
    CorrelatorTriple c;
    c.xx = c.yy = 2.0 * wp.p / std::numbers::pi * gd;
    c.zz = wp.p + (1.0 - wp.p) * sech2u * sech2u;
    return c;
}

PThreshold p_steer_type_i(double s, double u) {
    if (!(s >= 0.0 && u >= 0.0)) {
        throw std::invalid_argument("p_steer_type_i: s, u must be >= 0");
    }
    const double v = std::tanh(2.0 * s);
    const double w = std::tanh(2.0 * u) * std::tanh(2.0 * u);
    const double denom = 2.0 * v * v + w * w;
    if (denom == 0.0) {
        return {1.0, true};  // s = u = 0: separable for every p
    }
    const double raw = (std::sqrt(w * (w - 2.0 * v * v * w + 4.0 * v * v)) - w * (1.0 - w)) / denom;
    return clamp_threshold(raw);
}

PThreshold p_steer_type_ii(double s, double u) {
    if (!(s >= 0.0 && u >= 0.0)) {
        throw std::invalid_argument("p_steer_type_ii: s, u must be >= 0");
    }
    const double pi = std::numbers::pi;
    const double g = gudermannian(2.0 * s);
    const double g2 = g * g;
    const double w = std::tanh(2.0 * u) * std::tanh(2.0 * u);
    const double denom = 8.0 / pi * g2 + pi * w * w;
    if (denom == 0.0) {
        return {1.0, true};
    }
    const double raw =
        (std::sqrt(w * (pi * pi * w + 8.0 * (2.0 - w) * g2)) - pi * w * (1.0 - w)) / denom;
    return clamp_threshold(raw);
}

StandardForm werner_covariance(const WernerParams& wp) {
    validate(wp);
    StandardForm sf;
    sf.a = sf.b = wp.p * std::cosh(2.0 * wp.s) + (1.0 - wp.p) * std::cosh(2.0 * wp.u);
    sf.c = wp.p * std::sinh(2.0 * wp.s);
    sf.d = -sf.c;
    return sf;
}

PThreshold p_steer_gaussian(double s, double u) {
    if (!(s >= 0.0 && u >= 0.0)) {
        throw std::invalid_argument("p_steer_gaussian: s, u must be >= 0");
    }
    const double cs = std::cosh(2.0 * s);
    const double cu = std::cosh(2.0 * u);
    const double denom = 4.0 * cs * cu - 2.0 * (cu * cu + 1.0);
    if (denom == 0.0) {
        // s = u = 0 (vacuum mixture) or cs = (cu^2+1)/(2cu); the bracketed
        // root degenerates and no p in [0,1] satisfies the strict criterion.
        return {1.0, true};
    }
    const double radicand =
        cs * cs * (1.0 - 2.0 * cu) * (1.0 - 2.0 * cu) - 2.0 * cs * cu + cu * (4.0 - 3.0 * cu);
    if (radicand < 0.0) {
        return {1.0, true};
    }
    const double raw = (std::sqrt(radicand) + cs * (2.0 * cu - 1.0) - 2.0 * cu * cu + cu) / denom;
    return clamp_threshold(raw);
}

double type_i_threshold_quadratic(double p, double s, double u) {
    const double v = std::tanh(2.0 * s);
    const double w = std::tanh(2.0 * u) * std::tanh(2.0 * u);
    const double denom = 2.0 * v * v + w * w;
    if (denom == 0.0) {
        throw std::invalid_argument("type_i_threshold_quadratic: degenerate at s = u = 0");
    }
    return p * p + 2.0 * w * (1.0 - w) / denom * p - w * (2.0 - w) / denom;
}

}  // namespace cvsteer
