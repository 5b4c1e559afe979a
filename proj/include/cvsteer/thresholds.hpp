#ifndef CVSTEER_THRESHOLDS_HPP
#define CVSTEER_THRESHOLDS_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cvsteer/gaussian.hpp"

namespace cvsteer {

enum class Criterion { gaussian, type_i, type_ii };

std::string to_string(Criterion c);
Criterion criterion_from_string(const std::string& name);

/// Result of locating the transmissivity threshold eta* where a criterion
/// starts to certify steering. `found` is false when the criterion value
/// has no sign change on (0, 1]; `monotone` records the outcome of the
/// pre-bisection probe.
struct EtaThreshold {
    double eta{0.0};
    bool found{false};
    bool converged{false};
    bool monotone{true};
    double error_bound{0.0};
};

/// Bisection root of {moment value = 1} (pseudospin criteria) or
/// {det alpha = det V} (Gaussian) in eta for fixed (s, r). Monotonicity of
/// the criterion in eta is probed on five samples first; on probe failure
/// the bracket is located by a fine scan and the result flagged.
/// inner_tol (type-i series truncation) defaults to tol/100.
EtaThreshold eta_threshold(double s, double r, Criterion criterion, double tol = 1e-6,
                           double inner_tol = -1.0);

struct CrossoverResult {
    double s{0.0};
    bool found{false};
    std::string diagnostic;
};

/// Squeezing s* where the type-i and Gaussian thresholds meet, searched on
/// [s_lo, s_hi] by bisection on eta*_i(s) - eta*_G(s).
CrossoverResult crossover_s(double r, double tol = 1e-4, double s_lo = 0.3, double s_hi = 1.5);

/// Extrapolates eta*_i(s -> 0) at r = 0 from three small squeezings by an
/// exact fit in powers of s^2 (the threshold approaches its limit
/// quadratically in s).
double extrapolate_eta_limit(const std::vector<double>& s_values,
                             const std::vector<double>& thresholds);

struct SweepAxis {
    std::string name;  // "s", "r", "eta", "u", or "s=u"
    double min{0.0};
    double max{1.0};
    int count{2};
};

enum class StateFamily { tmst, werner };

/// Declarative description of a one-dimensional threshold sweep.
struct SweepSpec {
    SweepAxis axis;
    Criterion criterion{Criterion::gaussian};
    StateFamily family{StateFamily::tmst};
    std::map<std::string, double> fixed;  // bindings for the non-swept parameters
    double bisect_tol{1e-6};
    double trunc_tol{-1.0};  // defaults to bisect_tol / 100
    int jobs{1};
};

void validate(const SweepSpec& spec);

struct CurvePoint {
    double abscissa{0.0};
    double threshold{0.0};
    bool converged{false};
    double error_bound{0.0};
};

struct ThresholdCurve {
    SweepSpec spec;
    std::vector<CurvePoint> points;
};

/// Evaluates the threshold at every axis point. Points are independent and
/// may be computed concurrently (spec.jobs > 1); row order always follows
/// the axis. Per-point failures are flagged in-row (converged = false,
/// threshold = NaN when absent), never interpolated.
ThresholdCurve run_sweep(const SweepSpec& spec);

/// CSV with header "abscissa,threshold,converged,error_bound", LF endings.
void write_csv(const ThresholdCurve& curve, std::ostream& os);

/// JSON document with spec metadata and row records.
std::string to_json(const ThresholdCurve& curve);

}  // namespace cvsteer

#endif
