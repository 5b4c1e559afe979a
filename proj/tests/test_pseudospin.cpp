#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvsteer/fock.hpp"
#include "cvsteer/mathutil.hpp"
#include "cvsteer/oracles.hpp"
#include "cvsteer/pseudospin.hpp"

using namespace cvsteer;

TEST_CASE("type-i correlators on the EPR family") {
    for (double s : {0.1, 0.5, 1.0, 1.5}) {
        const TypeICorrelators c = type_i_correlators({s, 1.0, 0.0}, 1e-12);
        CHECK(c.converged);
        CHECK(std::abs(c.correlators.xx - std::tanh(2.0 * s)) < 1e-11);
        CHECK(c.correlators.zz == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.correlators.yy == -c.correlators.xx);
    }
}

TEST_CASE("type-i correlators vanish without squeezing") {
    const TypeICorrelators c = type_i_correlators({0.0, 0.7, 0.4}, 1e-12);
    CHECK(c.correlators.xx == 0.0);
    CHECK(c.correlators.yy == 0.0);
    CHECK(c.tail_bound == 0.0);
}

TEST_CASE("type-i xx against Fock-side operator expectation") {
    const TmstParams p{0.3, 0.7, 0.2};
    const TypeICorrelators series = type_i_correlators(p, 1e-10);
    const TruncatedDensityMatrix rho = truncated_tmst_density(p, 40);
    const CorrelatorTriple fock_side = pseudospin_expectation_fock(rho);
    CHECK(std::abs(series.correlators.xx - fock_side.xx) < 1e-8);
    CHECK(std::abs(series.correlators.yy - fock_side.yy) < 1e-8);
    CHECK(std::abs(series.correlators.zz - fock_side.zz) <= rho.tail_trace_bound + 1e-13);
}

TEST_CASE("type-i correlator bounds and sign structure on random parameters") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 40; ++i) {
        const TmstParams p{1.2 * uni(rng), uni(rng), 0.8 * uni(rng)};
        const TypeICorrelators c = type_i_correlators(p, 1e-9);
        CHECK(c.correlators.yy == -c.correlators.xx);
        CHECK(std::abs(c.correlators.xx) <= 1.0 + 1e-12);
        CHECK(std::abs(c.correlators.zz) <= 1.0 + 1e-12);
        CHECK(c.tail_bound <= 1e-9);
    }
}

TEST_CASE("type-i truncation honesty") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 15; ++i) {
        const TmstParams p{0.2 + 1.0 * uni(rng), 0.3 + 0.7 * uni(rng), 0.7 * uni(rng)};
        const TypeICorrelators coarse = type_i_correlators(p, 1e-6);
        const TypeICorrelators fine = type_i_correlators(p, 1e-12);
        CHECK(std::abs(coarse.correlators.xx - fine.correlators.xx) <= coarse.tail_bound);
    }
}

TEST_CASE("type-ii correlators closed forms") {
    const CorrelatorTriple vac = type_ii_correlators(StandardForm{});
    CHECK(vac.xx == 0.0);
    CHECK(vac.yy == 0.0);
    CHECK(vac.zz == 1.0);

    for (double s : {0.2, 0.6, 1.1}) {
        const CorrelatorTriple c = type_ii_correlators(epr_covariance(s));
        const double expected = 2.0 / std::numbers::pi * gudermannian(2.0 * s);
        CHECK(c.xx == doctest::Approx(expected).epsilon(1e-12));
        CHECK(c.yy == doctest::Approx(expected).epsilon(1e-9));
        CHECK(c.zz == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(type_ii_correlators(StandardForm{1.0, 1.0, 0.4, -0.4}),
                    std::invalid_argument);
}

TEST_CASE("type-ii xx against quadrant-mass quadrature") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int tested = 0;
    while (tested < 25) {
        StandardForm sf{1.0 + 1.5 * uni(rng), 1.0 + 1.5 * uni(rng), 1.6 * uni(rng) - 0.8,
                        1.6 * uni(rng) - 0.8};
        if (!is_bona_fide(sf)) continue;
        canonicalize(sf);
        const CorrelatorTriple c = type_ii_correlators(sf);
        CHECK(std::abs(c.xx - quadrant_sign_correlation(sf)) < 1e-6);
        ++tested;
    }
    // and on the TMST family
    for (double eta : {0.3, 0.9}) {
        const StandardForm sf = tmst_covariance({0.5, eta, 0.2});
        CHECK(std::abs(type_ii_correlators(sf).xx - quadrant_sign_correlation(sf)) < 1e-6);
    }
}

TEST_CASE("moment values on the EPR family") {
    for (double s : {0.1, 0.5, 1.0, 1.5}) {
        const MomentValue mi =
            moment_value(type_i_correlators({s, 1.0, 0.0}, 1e-12).correlators);
        const double t = std::tanh(2.0 * s);
        CHECK(std::abs(mi.value - (1.0 + 2.0 * t * t)) < 1e-10);
        CHECK(mi.steerable);

        const MomentValue mii = moment_value(type_ii_correlators(epr_covariance(s)));
        const double g = gudermannian(2.0 * s);
        CHECK(std::abs(mii.value - (1.0 + 8.0 / (std::numbers::pi * std::numbers::pi) * g * g)) <
              1e-12);
        CHECK(mii.steerable);
    }

    // vacuum sits on the boundary: strictly not steerable
    const MomentValue vac = moment_value(CorrelatorTriple{0.0, 0.0, 1.0});
    CHECK(vac.value == 1.0);
    CHECK_FALSE(vac.steerable);
}

TEST_CASE("moment monotonicity, limit, and type dominance on EPR states") {
    double prev_i = 1.0, prev_ii = 1.0;
    for (double s = 0.25; s <= 2.01; s += 0.25) {
        const double mi = moment_value(type_i_correlators({s, 1.0, 0.0}, 1e-11).correlators).value;
        const double mii = moment_value(type_ii_correlators(epr_covariance(s))).value;
        CHECK(mi > prev_i);
        CHECK(mii > prev_ii);
        CHECK(mi >= mii - 1e-12);
        prev_i = mi;
        prev_ii = mii;
    }
    // closed forms continue the trend toward the ceiling of 3
    const double t4 = std::tanh(8.0);
    const double g4 = gudermannian(8.0);
    CHECK(1.0 + 2.0 * t4 * t4 > 2.999);
    CHECK(1.0 + 8.0 / (std::numbers::pi * std::numbers::pi) * g4 * g4 > 2.99);
}

TEST_CASE("moment error bound dominates a perturbation") {
    const CorrelatorTriple c{0.5, -0.5, 0.9};
    const double b = 1e-6;
    const CorrelatorTriple shifted{c.xx + b, c.yy, c.zz};
    CHECK(std::abs(moment_value(shifted).value - moment_value(c).value) <
          moment_error_bound(c, b));
}

TEST_CASE("type-ii no-go: zz-only slice") {
    for (double a : {1.0, 1.3, 2.0}) {
        for (double b : {1.0, 1.6}) {
            const StandardForm sf{a, b, 0.0, 0.0};
            const double m = moment_value(type_ii_correlators(sf)).value;
            CHECK(m == doctest::Approx(1.0 / (a * a * b * b)).epsilon(1e-12));
            CHECK(m <= 1.0);
        }
    }
}

TEST_CASE("type-ii no-go scan") {
    NogoOptions opts;
    opts.grid_points = 9;
    const NogoResult result = type_ii_nogo_scan(opts);
    CHECK(result.max_value <= 1.0 + 1e-9);
    CHECK(std::abs(result.argmax.a - 1.0) < 1e-3);
    CHECK(std::abs(result.argmax.b - 1.0) < 1e-3);
    CHECK(std::abs(result.argmax.c) < 1e-3);
    CHECK(std::abs(result.argmax.d) < 1e-3);
    CHECK(result.feasible_points > 0);

    CHECK_THROWS_AS(type_ii_nogo_scan(NogoOptions{1, 3.0, 2.0, true, 1e-5}),
                    std::invalid_argument);
}

TEST_CASE("tolerance validation") {
    CHECK_THROWS_AS(type_i_correlators({0.5, 0.5, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(type_i_correlators({0.5, 0.5, 0.0}, -1.0), std::invalid_argument);
}
