#include <doctest.h>

#include <cmath>
#include <random>

#include "cvsteer/hermite.hpp"
#include "cvsteer/mathutil.hpp"
#include "cvsteer/oracles.hpp"

using namespace cvsteer;

TEST_CASE("theta parameters") {
    const ThetaParams vac = theta_from_standard_form(1.0, 1.0, 0.0);
    CHECK(vac.e == 0.0);
    CHECK(vac.f == 0.0);
    CHECK(vac.g == 0.0);

    // EPR form: e reduces to tanh(s), f and g vanish
    const double s = 0.45;
    const StandardForm epr = epr_covariance(s);
    const ThetaParams th = theta_from_standard_form(epr.a, epr.b, epr.c);
    const double denom = (epr.a + 1.0) * (epr.b + 1.0) - epr.c * epr.c;
    CHECK(th.e == doctest::Approx(2.0 * epr.c / denom).epsilon(1e-15));
    CHECK(th.e == doctest::Approx(std::tanh(s)).epsilon(1e-13));
    CHECK(std::abs(th.f) < 1e-14);
    CHECK(std::abs(th.g) < 1e-14);

    CHECK_THROWS_AS(theta_from_standard_form(-1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("theta round trip through the generative parameters") {
    const TmstParams p{0.4, 0.6, 0.3};
    const StandardForm sf = tmst_covariance(p);
    const ThetaParams th = theta_from_standard_form(sf.a, sf.b, sf.c);
    const TmstParams back = tmst_params_from_standard_form(sf);
    CHECK(back.s == doctest::Approx(p.s).epsilon(1e-12));
    CHECK(back.eta == doctest::Approx(p.eta).epsilon(1e-12));
    CHECK(back.r == doctest::Approx(p.r).epsilon(1e-12));
    // the coupling parameters in generative variables
    const double t = std::tanh(back.s);
    CHECK(th.e == doctest::Approx(t * std::sqrt(back.eta) / std::cosh(back.r)).epsilon(1e-12));
    CHECK(th.f == doctest::Approx(std::tanh(back.r) * std::tanh(back.r)).epsilon(1e-11));
    CHECK(th.g == doctest::Approx((1.0 - back.eta) * t * t).epsilon(1e-11));
}

TEST_CASE("hermite at origin, pinned values") {
    const ThetaParams th{0.37, 0.21, 0.11};
    CHECK(hermite_at_origin({0, 0, 0, 0}, th) == 1.0);
    CHECK(hermite_at_origin({1, 0, 0, 0}, th) == 0.0);
    CHECK(hermite_at_origin({1, 1, 0, 0}, th) == doctest::Approx(th.e).epsilon(1e-15));
    CHECK(hermite_at_origin({3, 0, 1, 0}, th) == 0.0);  // odd total

    // f-only coupling: H(2,0,2,0) = 2 f^2, finite even when e = 0
    const ThetaParams f_only{0.0, 0.6, 0.3};
    CHECK(hermite_at_origin({2, 0, 2, 0}, f_only) == doctest::Approx(2.0 * 0.36).epsilon(1e-14));
    CHECK(hermite_at_origin({1, 1, 0, 0}, f_only) == 0.0);
}

TEST_CASE("hermite taylor oracle") {
    const ThetaParams th{0.3, 0.15, 0.08};
    CHECK(hermite_taylor_oracle({0, 0, 0, 0}, th) == 1.0);
    CHECK(hermite_taylor_oracle({1, 1, 0, 0}, th) == doctest::Approx(th.e).epsilon(1e-14));
    CHECK(hermite_taylor_oracle({1, 0, 0, 0}, th) == 0.0);
    CHECK_THROWS_AS(hermite_taylor_oracle({4, 4, 4, 4}, th), std::invalid_argument);

    const HermiteTaylorTable table(th, 8);
    CHECK(table.value({2, 0, 2, 0}) == doctest::Approx(hermite_taylor_oracle({2, 0, 2, 0}, th)));
    CHECK_THROWS_AS(table.value({4, 4, 4, 0}), std::invalid_argument);
}

TEST_CASE("closed form vs expansion over random couplings") {
    const VerifyReport rep = verify_hermite(6, 8);
    for (const auto& check : rep.checks) {
        INFO(check.what, ": ", check.max_abs);
        CHECK(check.pass());
    }
}

TEST_CASE("hermite symmetry under (m1,m2) <-> (n1,n2)") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const TmstParams p{0.1 + uni(rng), 0.05 + 0.95 * uni(rng), 0.8 * uni(rng)};
        const StandardForm sf = tmst_covariance(p);
        const ThetaParams th = theta_from_standard_form(sf.a, sf.b, sf.c);
        for (int m1 = 0; m1 <= 4; ++m1) {
            for (int m2 = 0; m2 <= 4; ++m2) {
                for (int n1 = 0; n1 <= 4; ++n1) {
                    for (int n2 = 0; n2 <= 4; ++n2) {
                        REQUIRE(hermite_at_origin({m1, m2, n1, n2}, th) ==
                                hermite_at_origin({n1, n2, m1, m2}, th));
                    }
                }
            }
        }
    }
}

TEST_CASE("fock element through the hermite correspondence") {
    // vacuum
    CHECK(fock_from_hermite(StandardForm{}, {0, 0, 0, 0}) == doctest::Approx(1.0).epsilon(1e-14));

    // EPR diagonal
    const double s = 0.5;
    const double t = std::tanh(s);
    const StandardForm epr = epr_covariance(s);
    for (int m = 0; m <= 3; ++m) {
        for (int n = 0; n <= 3; ++n) {
            CHECK(fock_from_hermite(epr, {m, m, n, n}) ==
                  doctest::Approx((1.0 - t * t) * pow_int(t, m + n)).epsilon(1e-12));
        }
    }

    // general TMST: both routes agree
    const TmstParams p{0.3, 0.7, 0.2};
    const StandardForm sf = tmst_covariance(p);
    for (int m1 = 0; m1 <= 4; ++m1) {
        for (int m2 = 0; m2 <= 4; ++m2) {
            for (int n1 = 0; n1 <= 4; ++n1) {
                for (int n2 = 0; n2 <= 4; ++n2) {
                    REQUIRE(std::abs(fock_from_hermite(sf, {m1, m2, n1, n2}) -
                                     tmst_fock_element(p, {m1, m2, n1, n2})) < 1e-10);
                }
            }
        }
    }

    CHECK_THROWS_AS(fock_from_hermite(StandardForm{2.0, 2.0, 0.5, 0.5}, {0, 0, 0, 0}),
                    std::invalid_argument);
}

TEST_CASE("determinant identity of the parametrization") {
    CHECK(det_relation_residual({0.0, 1.0, 0.0}) == 0.0);
    CHECK(det_relation_residual({0.5, 0.7, 0.3}) < 1e-12);
    CHECK(det_relation_residual({1.2, 0.3, 0.8}) < 1e-12);
}

TEST_CASE("standard-form inversion feasibility") {
    // round trips across the family
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const TmstParams p{1.2 * uni(rng), uni(rng), uni(rng)};
        const TmstParams back = tmst_params_from_standard_form(tmst_covariance(p));
        CHECK(back.s == doctest::Approx(p.s).epsilon(1e-9));
        CHECK(std::abs(back.eta * std::cosh(back.r) * std::cosh(back.r) -
                       p.eta * std::cosh(p.r) * std::cosh(p.r)) < 1e-9);
    }

    // b = 1 admits no cross-correlations
    CHECK_THROWS_AS(tmst_params_from_standard_form(StandardForm{1.5, 1.0, 0.3, -0.3}),
                    std::invalid_argument);
    // a below the reachable floor for the given b, c
    CHECK_THROWS_AS(tmst_params_from_standard_form(StandardForm{1.0, 2.0, 1.7, -1.7}),
                    std::invalid_argument);
    // not a TMST form
    CHECK_THROWS_AS(tmst_params_from_standard_form(StandardForm{2.0, 2.0, 0.5, 0.4}),
                    std::invalid_argument);
    // vacuum maps to the trivial channel
    const TmstParams vac = tmst_params_from_standard_form(StandardForm{});
    CHECK(vac.s == 0.0);
    CHECK(vac.r == 0.0);
}
