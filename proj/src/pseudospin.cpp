#include "cvsteer/pseudospin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cvsteer/mathutil.hpp"

namespace cvsteer {

namespace {

constexpr int kMaxOuterTerms = 4000;
constexpr int kMaxInnerTerms = 4000;

/// Accumulates exponents of possibly-zero bases in log space.
struct LogProduct {
    double log{0.0};
    bool zero{false};

    void mul_pow(double base, double expo) {
        if (expo == 0.0 || zero) return;
        if (base == 0.0) {
            zero = true;
            return;
        }
        log += expo * std::log(base);
    }
    double value(double extra_log) const {
        return zero ? 0.0 : std::exp(log + extra_log);
    }
};

/// One (n, l) term of the xx series: the two k-sum families of the
/// attenuator-amplifier expansion.
double xx_series_term(int n, int l, double eta, double ich, double th) {
    double gamma_sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        LogProduct lp;
        lp.mul_pow(eta, 2 * k + 0.5);
        lp.mul_pow(1.0 - eta, 2 * (n - k));
        lp.mul_pow(ich, 4 * k + 3);
        lp.mul_pow(th, 4 * l);
        if (lp.zero) continue;
        const double lb = 0.5 * (log_binomial(2 * k + 2 * l, 2 * k) +
                                 log_binomial(2 * k + 2 * l + 1, 2 * k + 1) +
                                 log_binomial(2 * n, 2 * k) +
                                 log_binomial(2 * n + 1, 2 * k + 1));
        gamma_sum += lp.value(lb);
    }
    double upsilon_sum = 0.0;
    for (int k = 0; k <= n - 1; ++k) {
        LogProduct lp;
        lp.mul_pow(eta, 2 * k + 1.5);
        lp.mul_pow(1.0 - eta, 2 * (n - k) - 1);
        lp.mul_pow(ich, 4 * k + 5);
        lp.mul_pow(th, 4 * l + 2);
        if (lp.zero) continue;
        const double lb = 0.5 * (log_binomial(2 * k + 2 * l + 2, 2 * k + 1) +
                                 log_binomial(2 * k + 2 * l + 3, 2 * k + 2) +
                                 log_binomial(2 * n, 2 * k + 1) +
                                 log_binomial(2 * n + 1, 2 * k + 2));
        upsilon_sum += lp.value(lb);
    }
    return gamma_sum + upsilon_sum;
}

/// Ratio bound term(n, l+1)/term(n, l) valid for every k in both families;
/// decreasing in l, so a geometric tail bound applies once it drops below 1.
double xx_series_l_ratio(int n, int l, double th4) {
    const double a1 = static_cast<double>(2 * n + 2 * l + 1);
    const double a2 = static_cast<double>(2 * n + 2 * l + 2);
    const double a3 = static_cast<double>(2 * n + 2 * l + 3);
    const double b1 = static_cast<double>(2 * l + 1);
    const double b2 = static_cast<double>(2 * l + 2);
    const double b3 = static_cast<double>(2 * l + 3);
    const double gamma_ratio = std::sqrt(a2 * a1 / (b2 * b1) * (a3 * a2 / (b3 * b2)));
    const double upsilon_ratio = std::sqrt(a1 * a2 * a2 * a3 / (b2 * b2 * b3 * b3));
    return th4 * std::max(gamma_ratio, upsilon_ratio);
}

}  // namespace

TypeICorrelators type_i_correlators(const TmstParams& p, double tol) {
    validate(p);
    if (!(tol > 0.0)) {
        throw std::invalid_argument("type_i_correlators: tol must be > 0");
    }
    TypeICorrelators out;
    out.correlators.zz = 1.0 / std::sqrt(det_cov(tmst_covariance(p)));

    const double t = std::tanh(p.s);
    if (t == 0.0 || p.eta == 0.0) {
        // No correlations survive: every series term carries a factor of
        // tanh(s) and sqrt(eta).
        return out;
    }
    const double th = std::tanh(p.r);
    const double th4 = th * th * th * th;
    const double ich = 1.0 / std::cosh(p.r);
    const double t4 = t * t * t * t;
    const double front = 2.0 * (1.0 - t * t);

    // Error budget: half for the n-tail (bounded by the Bob-marginal mass
    // 2 t^(4(n+1))), half spread across the per-n l-tails.
    const double outer_goal = 0.5 * tol;
    int n_estimate = 1;
    while (n_estimate < kMaxOuterTerms && 2.0 * std::pow(t4, n_estimate + 1) >= outer_goal) {
        ++n_estimate;
    }
    const double inner_goal = 0.5 * tol / (n_estimate + 1);

    double xx = 0.0;
    double inner_tail_total = 0.0;
    double outer_tail = 0.0;
    bool converged = true;

    for (int n = 0;; ++n) {
        if (n >= kMaxOuterTerms) {
            converged = false;
            outer_tail = 2.0 * pow_int(t4, n + 1);
            break;
        }
        const double block_weight = front * pow_int(t, 4 * n + 1);
        double block = 0.0;
        double prev_term = -1.0;
        int l_used = 0;
        for (int l = 0;; ++l) {
            l_used = l + 1;
            if (l >= kMaxInnerTerms) {
                converged = false;
                inner_tail_total += block_weight * std::max(prev_term, 0.0);
                break;
            }
            const double term = xx_series_term(n, l, p.eta, ich, th);
            block += term;
            if (th4 == 0.0) {
                break;  // only l = 0 contributes
            }
            const double ratio = xx_series_l_ratio(n, l, th4);
            if (ratio < 1.0) {
                const double tail = term * ratio / (1.0 - ratio);
                if (block_weight * tail < inner_goal) {
                    inner_tail_total += block_weight * tail;
                    break;
                }
            }
            prev_term = term;
        }
        xx += block_weight * block;
        out.n_terms = n + 1;
        out.max_l_terms = std::max(out.max_l_terms, l_used);
        const double remaining = 2.0 * pow_int(t4, n + 1);
        if (remaining < outer_goal) {
            outer_tail = remaining;
            break;
        }
    }

    out.correlators.xx = xx;
    out.correlators.yy = -xx;
    out.tail_bound = outer_tail + inner_tail_total;
    out.converged = converged && out.tail_bound <= tol;
    return out;
}

CorrelatorTriple type_ii_correlators(const StandardForm& sf, double tol) {
    if (!is_bona_fide(sf, tol)) {
        throw std::invalid_argument("type_ii_correlators: state is not physical");
    }
    const double ab = sf.a * sf.b;
    const double inv_sqrt_det = 1.0 / std::sqrt(det_cov(sf));
    const double two_over_pi = 2.0 / std::numbers::pi;
    CorrelatorTriple c;
    c.xx = two_over_pi * std::atan(std::sqrt(sf.c * sf.c / (ab - sf.c * sf.c)));
    c.yy = two_over_pi * inv_sqrt_det * std::atan(std::sqrt(sf.d * sf.d / (ab - sf.d * sf.d)));
    c.zz = inv_sqrt_det;
    return c;
}

MomentValue moment_value(const CorrelatorTriple& c) {
    MomentValue m;
    m.value = c.xx * c.xx + c.yy * c.yy + c.zz * c.zz;
    m.steerable = m.value > 1.0;
    return m;
}

double moment_error_bound(const CorrelatorTriple& c, double xx_bound) {
    return 2.0 * xx_bound * (std::abs(c.xx) + std::abs(c.yy)) + 2.0 * xx_bound * xx_bound;
}

NogoResult type_ii_nogo_scan(const NogoOptions& opts) {
    if (opts.grid_points < 2 || opts.max_diag <= 1.0 || opts.max_offdiag <= 0.0) {
        throw std::invalid_argument("type_ii_nogo_scan: degenerate grid specification");
    }
    const int n = opts.grid_points;
    auto diag_at = [&](int i) { return 1.0 + (opts.max_diag - 1.0) * i / (n - 1); };
    auto off_at = [&](int i) { return -opts.max_offdiag + 2.0 * opts.max_offdiag * i / (n - 1); };

    auto feasible = [](const StandardForm& sf) {
        if (!is_bona_fide(sf)) return false;
        return det_alpha(sf) <= det_cov(sf) + 1e-12;
    };

    NogoResult best;
    best.max_value = -1.0;
    for (int ia = 0; ia < n; ++ia) {
        for (int ib = 0; ib < n; ++ib) {
            for (int ic = 0; ic < n; ++ic) {
                for (int id = 0; id < n; ++id) {
                    const StandardForm sf{diag_at(ia), diag_at(ib), off_at(ic), off_at(id)};
                    if (!feasible(sf)) continue;
                    ++best.feasible_points;
                    const double m = moment_value(type_ii_correlators(sf)).value;
                    if (m > best.max_value) {
                        best.max_value = m;
                        best.argmax = sf;
                    }
                }
            }
        }
    }
    if (best.max_value < 0.0) {
        throw std::invalid_argument("type_ii_nogo_scan: no feasible grid point");
    }

    if (opts.refine) {
        double step = std::max(opts.max_diag - 1.0, 2.0 * opts.max_offdiag) / (n - 1);
        StandardForm cur = best.argmax;
        int guard = 0;
        while (step >= opts.refine_step_min && guard++ < 100000) {
            bool moved = false;
            for (int coord = 0; coord < 4; ++coord) {
                for (double sgn : {+1.0, -1.0}) {
                    StandardForm trial = cur;
                    double* field = coord == 0 ? &trial.a
                                  : coord == 1 ? &trial.b
                                  : coord == 2 ? &trial.c
                                               : &trial.d;
                    *field += sgn * step;
                    if (coord < 2 && *field < 1.0) *field = 1.0;
                    if (!feasible(trial)) continue;
                    const double m = moment_value(type_ii_correlators(trial)).value;
                    if (m > best.max_value) {
                        best.max_value = m;
                        best.argmax = trial;
                        cur = trial;
                        moved = true;
                    }
                }
            }
            if (!moved) {
                step *= 0.5;
            }
        }
    }
    return best;
}

}  // namespace cvsteer
