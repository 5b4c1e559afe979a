#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cvsteer/thresholds.hpp"
#include "cvsteer/werner.hpp"

using namespace cvsteer;

TEST_CASE("gaussian threshold is flat at 1/2 for r = 0") {
    for (double s : {0.1, 0.6, 1.2}) {
        const EtaThreshold th = eta_threshold(s, 0.0, Criterion::gaussian, 1e-10);
        REQUIRE(th.found);
        CHECK(th.converged);
        CHECK(std::abs(th.eta - 0.5) < 1e-9);
    }
}

TEST_CASE("type-i threshold approaches 1/3 at small squeezing") {
    const EtaThreshold th = eta_threshold(0.05, 0.0, Criterion::type_i, 1e-8);
    REQUIRE(th.found);
    CHECK(std::abs(th.eta - 1.0 / 3.0) < 0.02);
}

TEST_CASE("type-ii threshold sits above the gaussian one") {
    const EtaThreshold tii = eta_threshold(0.5, 0.0, Criterion::type_ii, 1e-7);
    REQUIRE(tii.found);
    CHECK(tii.eta > 0.5);

    // region containment across a small s-grid
    for (double s : {0.2, 0.6, 1.0, 1.4}) {
        const EtaThreshold a = eta_threshold(s, 0.0, Criterion::type_ii, 1e-7);
        const EtaThreshold g = eta_threshold(s, 0.0, Criterion::gaussian, 1e-7);
        REQUIRE(a.found);
        REQUIRE(g.found);
        CHECK(a.eta >= g.eta - 1e-6);
    }
}

TEST_CASE("no threshold when the criterion never fires") {
    const EtaThreshold none = eta_threshold(0.1, 1.2, Criterion::type_i, 1e-6);
    CHECK_FALSE(none.found);
}

TEST_CASE("small-s extrapolation of the type-i threshold") {
    const std::vector<double> svals{0.02, 0.05, 0.1};
    std::vector<double> etas;
    for (double s : svals) {
        const EtaThreshold th = eta_threshold(s, 0.0, Criterion::type_i, 1e-8);
        REQUIRE(th.found);
        etas.push_back(th.eta);
    }
    CHECK(std::abs(extrapolate_eta_limit(svals, etas) - 1.0 / 3.0) < 0.01);

    CHECK_THROWS_AS(extrapolate_eta_limit({0.1, 0.2}, {0.3}), std::invalid_argument);
}

TEST_CASE("crossover of the type-i and gaussian thresholds") {
    const CrossoverResult at_zero = crossover_s(0.0, 1e-3);
    REQUIRE(at_zero.found);
    CHECK(at_zero.s >= 0.8);
    CHECK(at_zero.s <= 1.0);

    // moderate amplifier noise: the type-i curve dips below the gaussian one
    // in an intermediate window, so a crossing exists on its upper edge
    const CrossoverResult moderate = crossover_s(0.2, 1e-3, 0.55, 1.5);
    REQUIRE(moderate.found);
    CHECK(moderate.s > 0.55);
    CHECK(moderate.s < 1.5);

    // bracket with no crossing is reported, not invented
    const CrossoverResult none = crossover_s(0.0, 1e-3, 0.1, 0.3);
    CHECK_FALSE(none.found);
    CHECK_FALSE(none.diagnostic.empty());
}

TEST_CASE("sweep validation") {
    SweepSpec spec;
    spec.axis = {"s", 1.0, 0.5, 10};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axis = {"s", 0.1, 0.5, 1};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axis = {"eta", 0.1, 0.5, 5};
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
    spec.axis = {"s", 0.1, 0.5, 5};
    spec.bisect_tol = -1.0;
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}

TEST_CASE("gaussian sweep is constant") {
    SweepSpec spec;
    spec.axis = {"s", 0.1, 1.5, 8};
    spec.criterion = Criterion::gaussian;
    spec.fixed["r"] = 0.0;
    spec.bisect_tol = 1e-8;
    const ThresholdCurve curve = run_sweep(spec);
    REQUIRE(curve.points.size() == 8);
    for (const CurvePoint& pt : curve.points) {
        CHECK(pt.converged);
        CHECK(std::abs(pt.threshold - 0.5) < 1e-7);
    }
}

TEST_CASE("werner sweep decreases toward 1/sqrt(3)") {
    SweepSpec spec;
    spec.axis = {"s=u", 0.2, 5.0, 25};
    spec.criterion = Criterion::type_i;
    spec.family = StateFamily::werner;
    const ThresholdCurve curve = run_sweep(spec);
    REQUIRE(curve.points.size() == 25);
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        CHECK(curve.points[i].threshold <= curve.points[i - 1].threshold + 1e-12);
    }
    CHECK(std::abs(curve.points.back().threshold - 1.0 / std::sqrt(3.0)) < 1e-3);
}

TEST_CASE("trivial two-point sweep") {
    SweepSpec spec;
    spec.axis = {"s", 0.4, 0.5, 2};
    spec.criterion = Criterion::gaussian;
    const ThresholdCurve curve = run_sweep(spec);
    REQUIRE(curve.points.size() == 2);
    CHECK(curve.points[0].converged);
    CHECK(curve.points[1].converged);
}

TEST_CASE("sweeps are deterministic and parallel-safe") {
    SweepSpec spec;
    spec.axis = {"s", 0.1, 1.2, 7};
    spec.criterion = Criterion::type_ii;
    spec.bisect_tol = 1e-7;

    std::ostringstream once, twice, parallel;
    write_csv(run_sweep(spec), once);
    write_csv(run_sweep(spec), twice);
    spec.jobs = 4;
    write_csv(run_sweep(spec), parallel);
    CHECK(once.str() == twice.str());
    CHECK(once.str() == parallel.str());
    CHECK(once.str().rfind("abscissa,threshold,converged,error_bound\n", 0) == 0);
}

TEST_CASE("json serialization carries the declared tolerances") {
    SweepSpec spec;
    spec.axis = {"s", 0.4, 0.6, 2};
    spec.criterion = Criterion::gaussian;
    spec.bisect_tol = 1e-7;
    const std::string doc = to_json(run_sweep(spec));
    CHECK(doc.find("\"bisect_tol\": 1e-07") != std::string::npos);
    CHECK(doc.find("\"criterion\": \"gaussian\"") != std::string::npos);
    CHECK(doc.find("\"points\"") != std::string::npos);
}

TEST_CASE("criterion names round trip") {
    CHECK(criterion_from_string(to_string(Criterion::type_i)) == Criterion::type_i);
    CHECK(criterion_from_string("type_ii") == Criterion::type_ii);
    CHECK_THROWS_AS(criterion_from_string("bogus"), std::invalid_argument);
}
