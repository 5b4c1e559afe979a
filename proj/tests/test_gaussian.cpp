#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvsteer/gaussian.hpp"
#include "cvsteer/oracles.hpp"

using namespace cvsteer;

namespace {

/// Covariance of a TMST state via the explicit three-mode congruence
/// pipeline: attach a vacuum ancilla, mix on the beam splitter, drop the
/// ancilla, then the same with the two-mode squeezer.
Eigen::Matrix4d tmst_by_congruence(const TmstParams& p) {
    Eigen::MatrixXd v = direct_sum(to_matrix(epr_covariance(p.s)), Eigen::Matrix2d::Identity());
    v = apply_symplectic(v, embed_two_mode(beam_splitter(p.eta), 3, 0, 2));
    v = discard_mode(v, 2);
    v = direct_sum(v, Eigen::Matrix2d::Identity());
    v = apply_symplectic(v, embed_two_mode(two_mode_squeezer(p.r), 3, 0, 2));
    v = discard_mode(v, 2);
    return v;
}

}  // namespace

TEST_CASE("epr covariance") {
    const StandardForm vac = epr_covariance(0.0);
    CHECK(vac.a == 1.0);
    CHECK(vac.b == 1.0);
    CHECK(vac.c == 0.0);
    CHECK(vac.d == 0.0);

    const StandardForm sf = epr_covariance(0.5);
    CHECK(sf.a == doctest::Approx(std::cosh(1.0)).epsilon(1e-15));
    CHECK(sf.b == sf.a);
    CHECK(sf.c == doctest::Approx(std::sinh(1.0)).epsilon(1e-15));
    CHECK(sf.d == -sf.c);

    // pure state: both symplectic eigenvalues 1
    const auto nu = symplectic_eigenvalues(to_matrix(sf));
    CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(nu[1] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(is_bona_fide(sf));

    // negative s flips the sign of c
    CHECK(epr_covariance(-0.5).c == doctest::Approx(-std::sinh(1.0)));
}

TEST_CASE("epr purity: det V = 1") {
    for (double s : {0.1, 0.5, 1.0, 1.5, 2.0}) {
        CHECK(det_cov(epr_covariance(s)) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("tmst covariance special cases") {
    const StandardForm epr = epr_covariance(0.7);
    const StandardForm same = tmst_covariance({0.7, 1.0, 0.0});
    CHECK(same.a == doctest::Approx(epr.a).epsilon(1e-15));
    CHECK(same.c == doctest::Approx(epr.c).epsilon(1e-15));

    // full loss: vacuum (x) thermal, no correlations
    const StandardForm lost = tmst_covariance({0.7, 0.0, 0.0});
    CHECK(lost.a == doctest::Approx(1.0));
    CHECK(lost.c == 0.0);
    CHECK(lost.b == doctest::Approx(std::cosh(1.4)));
}

TEST_CASE("tmst covariance equals congruence pipeline") {
    const TmstParams p{0.5, 0.6, 0.3};
    const Eigen::Matrix4d direct = to_matrix(tmst_covariance(p));
    const Eigen::Matrix4d pipeline = tmst_by_congruence(p);
    CHECK((direct - pipeline).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("channel composition consistency on random triples") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 120; ++i) {
        const TmstParams p{1.5 * uni(rng), uni(rng), 1.0 * uni(rng)};
        const Eigen::Matrix4d direct = to_matrix(tmst_covariance(p));
        const Eigen::Matrix4d pipeline = tmst_by_congruence(p);
        REQUIRE((direct - pipeline).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symplectic matrices") {
    CHECK((beam_splitter(1.0) - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((two_mode_squeezer(0.0) - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(beam_splitter(1.2), std::invalid_argument);
    CHECK_THROWS_AS(beam_splitter(-0.1), std::invalid_argument);

    const Eigen::Matrix4d omega = symplectic_form();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Eigen::Matrix4d bs = beam_splitter(uni(rng));
        const Eigen::Matrix4d tms = two_mode_squeezer(2.0 * uni(rng));
        CHECK((bs * omega * bs.transpose() - omega).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((tms * omega * tms.transpose() - omega).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("apply_symplectic") {
    const Eigen::Matrix4d v = to_matrix(epr_covariance(0.4));
    const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
    CHECK((apply_symplectic(v, id) - v).cwiseAbs().maxCoeff() == 0.0);
    CHECK((apply_symplectic(v, beam_splitter(1.0)) - v).cwiseAbs().maxCoeff() == 0.0);

    // two-mode squeezing of the two-mode vacuum gives the EPR covariance
    const Eigen::MatrixXd squeezed = apply_symplectic(id, two_mode_squeezer(0.3));
    CHECK((squeezed - to_matrix(epr_covariance(0.3))).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_WITH_AS(apply_symplectic(v, 2.0 * id),
                         doctest::Contains("not symplectic"), std::invalid_argument);
}

TEST_CASE("loss channel on A") {
    const StandardForm epr = epr_covariance(0.5);
    const StandardForm same = loss_channel_on_A(epr, 1.0);
    CHECK(same.a == doctest::Approx(epr.a).epsilon(1e-14));
    CHECK(same.c == doctest::Approx(epr.c).epsilon(1e-14));

    const StandardForm dark = loss_channel_on_A(epr, 0.0);
    CHECK(dark.a == doctest::Approx(1.0));
    CHECK(dark.c == 0.0);

    // against the three-mode embedding
    const StandardForm half = loss_channel_on_A(epr, 0.5);
    Eigen::MatrixXd v = direct_sum(to_matrix(epr), Eigen::Matrix2d::Identity());
    v = apply_symplectic(v, embed_two_mode(beam_splitter(0.5), 3, 0, 2));
    v = discard_mode(v, 2);
    CHECK((to_matrix(half) - v).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(loss_channel_on_A(StandardForm{2.0, 1.0, 0.5, -0.5}, 0.5),
                    std::invalid_argument);
}

TEST_CASE("gaussian steerability") {
    CHECK(is_gaussian_steerable_AtoB(epr_covariance(0.1)));
    CHECK_FALSE(is_gaussian_steerable_AtoB(tmst_covariance({0.5, 0.4, 0.0})));
    CHECK(is_gaussian_steerable_AtoB(tmst_covariance({0.5, 0.6, 0.0})));

    // strictness: vacuum sits exactly on the boundary det alpha = det V
    CHECK_FALSE(is_gaussian_steerable_AtoB(StandardForm{}));

    // non-physical input rejected
    CHECK_THROWS_AS(is_gaussian_steerable_AtoB(StandardForm{1.0, 1.0, 0.5, -0.5}),
                    std::invalid_argument);
}

TEST_CASE("gaussian steering threshold flips at eta = 1/2") {
    for (double s : {0.2, 0.7, 1.3}) {
        double lo = 0.05, hi = 0.95;
        REQUIRE_FALSE(is_gaussian_steerable_AtoB(tmst_covariance({s, lo, 0.0})));
        REQUIRE(is_gaussian_steerable_AtoB(tmst_covariance({s, hi, 0.0})));
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (is_gaussian_steerable_AtoB(tmst_covariance({s, mid, 0.0}))) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        CHECK(std::abs(0.5 * (lo + hi) - 0.5) < 1e-9);
    }
}

TEST_CASE("wigner function") {
    const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
    CHECK(wigner_at(StandardForm{}, Eigen::Vector4d::Zero()) ==
          doctest::Approx(inv_pi2).epsilon(1e-14));
    CHECK(wigner_at(epr_covariance(0.3), Eigen::Vector4d::Zero()) ==
          doctest::Approx(inv_pi2).epsilon(1e-12));

    CHECK_THROWS_AS(wigner_at(StandardForm{1.0, 1.0, 0.9, -0.9}, Eigen::Vector4d::Zero()),
                    std::invalid_argument);

    // normalization by brute-force quadrature, including a strongly
    // correlated state
    for (const StandardForm& sf :
         {epr_covariance(0.4), tmst_covariance({0.6, 0.7, 0.2}), epr_covariance(1.0)}) {
        CHECK(wigner_norm_quadrature(sf, 20) == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("canonicalize flips negative c") {
    StandardForm sf{2.0, 2.0, -0.5, 0.5};
    CHECK(canonicalize(sf));
    CHECK(sf.c == 0.5);
    CHECK(sf.d == -0.5);
    CHECK_FALSE(canonicalize(sf));
}

TEST_CASE("covariance matrix validation") {
    Eigen::MatrixXd lopsided = Eigen::MatrixXd::Identity(4, 4);
    lopsided(0, 1) = 0.5;  // not symmetric
    CHECK_THROWS_AS(apply_symplectic(lopsided, beam_splitter(0.5)), std::invalid_argument);
    CHECK_FALSE(is_bona_fide(Eigen::Matrix4d(lopsided)));

    CHECK_THROWS_AS(validate(TmstParams{-0.1, 0.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TmstParams{0.1, 1.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(validate(TmstParams{0.1, 0.5, -1.0}), std::invalid_argument);
}
