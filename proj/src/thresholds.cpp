#include "cvsteer/thresholds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "cvsteer/mathutil.hpp"
#include "cvsteer/pseudospin.hpp"
#include "cvsteer/werner.hpp"

namespace cvsteer {

std::string to_string(Criterion c) {
    switch (c) {
        case Criterion::gaussian: return "gaussian";
        case Criterion::type_i: return "type-i";
        case Criterion::type_ii: return "type-ii";
    }
    return "unknown";
}

Criterion criterion_from_string(const std::string& name) {
    if (name == "gaussian") return Criterion::gaussian;
    if (name == "type-i" || name == "type_i") return Criterion::type_i;
    if (name == "type-ii" || name == "type_ii") return Criterion::type_ii;
    throw std::invalid_argument("unknown criterion: " + name);
}

namespace {

/// Signed criterion value at (s, eta, r); positive certifies steering.
double criterion_value(double s, double r, double eta, Criterion criterion, double inner_tol) {
    const TmstParams p{s, eta, r};
    switch (criterion) {
        case Criterion::gaussian:
            return gaussian_steering_gap(tmst_covariance(p));
        case Criterion::type_i: {
            const auto corr = type_i_correlators(p, inner_tol);
            return moment_value(corr.correlators).value - 1.0;
        }
        case Criterion::type_ii:
            return moment_value(type_ii_correlators(tmst_covariance(p))).value - 1.0;
    }
    return 0.0;
}

}  // namespace

EtaThreshold eta_threshold(double s, double r, Criterion criterion, double tol, double inner_tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("eta_threshold: tol must be > 0");
    }
    if (inner_tol <= 0.0) {
        inner_tol = tol / 100.0;
    }
    EtaThreshold result;
    auto f = [&](double eta) { return criterion_value(s, r, eta, criterion, inner_tol); };

    // Monotonicity probe on five interior samples plus the endpoints.
    const double probe_eta[7] = {0.0, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
    double probe_val[7];
    for (int i = 0; i < 7; ++i) {
        probe_val[i] = f(probe_eta[i]);
    }
    const double slack = 10.0 * inner_tol;
    for (int i = 1; i < 7; ++i) {
        if (probe_val[i] < probe_val[i - 1] - slack) {
            result.monotone = false;
            break;
        }
    }

    double lo = 0.0, hi = 1.0;
    double flo = probe_val[0], fhi = probe_val[6];
    if (result.monotone) {
        if (fhi <= 0.0) {
            return result;  // no steering anywhere on (0, 1]
        }
        if (flo > 0.0) {
            // Steerable already in the eta -> 0 limit; threshold degenerates.
            result.found = true;
            result.converged = true;
            result.eta = 0.0;
            return result;
        }
        // Narrow the bracket with the probes before bisecting.
        for (int i = 1; i < 7; ++i) {
            if (probe_val[i] <= 0.0) {
                lo = probe_eta[i];
                flo = probe_val[i];
            } else {
                hi = probe_eta[i];
                fhi = probe_val[i];
                break;
            }
        }
    } else {
        // Fallback: locate the first sign change on a fine grid.
        const int n_scan = 1000;
        bool bracketed = false;
        double prev_eta = 0.0, prev_val = probe_val[0];
        for (int i = 1; i <= n_scan; ++i) {
            const double eta = static_cast<double>(i) / n_scan;
            const double val = f(eta);
            if (prev_val <= 0.0 && val > 0.0) {
                lo = prev_eta;
                hi = eta;
                bracketed = true;
                break;
            }
            prev_eta = eta;
            prev_val = val;
        }
        if (!bracketed) {
            return result;
        }
    }

    int iterations = 0;
    while (hi - lo > tol && iterations++ < 200) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.found = true;
    result.converged = hi - lo <= tol;
    result.eta = 0.5 * (lo + hi);
    result.error_bound = 0.5 * (hi - lo);
    return result;
}

CrossoverResult crossover_s(double r, double tol, double s_lo, double s_hi) {
    CrossoverResult out;
    const double eta_tol = std::min(1e-7, tol * 1e-2);
    auto gap = [&](double s) -> std::optional<double> {
        const EtaThreshold ti = eta_threshold(s, r, Criterion::type_i, eta_tol);
        const EtaThreshold tg = eta_threshold(s, r, Criterion::gaussian, eta_tol);
        if (!ti.found || !tg.found) {
            return std::nullopt;
        }
        return ti.eta - tg.eta;
    };
    auto glo = gap(s_lo);
    auto ghi = gap(s_hi);
    if (!glo || !ghi) {
        out.diagnostic = "threshold undefined at a bracket endpoint";
        return out;
    }
    if ((*glo > 0.0) == (*ghi > 0.0)) {
        std::ostringstream msg;
        msg << "no crossing in bracket: gap(" << s_lo << ") = " << *glo << ", gap(" << s_hi
            << ") = " << *ghi;
        out.diagnostic = msg.str();
        return out;
    }
    double lo = s_lo, hi = s_hi;
    bool lo_neg = *glo < 0.0;
    int iterations = 0;
    while (hi - lo > tol && iterations++ < 100) {
        const double mid = 0.5 * (lo + hi);
        const auto gm = gap(mid);
        if (!gm) {
            out.diagnostic = "threshold undefined inside bracket";
            return out;
        }
        if ((*gm < 0.0) == lo_neg) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.found = true;
    out.s = 0.5 * (lo + hi);
    return out;
}

double extrapolate_eta_limit(const std::vector<double>& s_values,
                             const std::vector<double>& thresholds) {
    if (s_values.size() != thresholds.size() || s_values.empty()) {
        throw std::invalid_argument("extrapolate_eta_limit: size mismatch");
    }
    // Lagrange evaluation at s^2 = 0 of the polynomial through (s_i^2, eta_i);
    // the threshold approaches its limit quadratically in s.
    const std::size_t n = s_values.size();
    double value = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double xj = s_values[j] * s_values[j];
        double weight = 1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            const double xk = s_values[k] * s_values[k];
            weight *= xk / (xk - xj);
        }
        value += thresholds[j] * weight;
    }
    return value;
}

void validate(const SweepSpec& spec) {
    if (!(spec.axis.min < spec.axis.max)) {
        throw std::invalid_argument("SweepSpec: axis.min must be < axis.max");
    }
    if (spec.axis.count < 2) {
        throw std::invalid_argument("SweepSpec: axis.count must be >= 2");
    }
    if (!(spec.bisect_tol > 0.0)) {
        throw std::invalid_argument("SweepSpec: bisect_tol must be > 0");
    }
    if (spec.jobs < 1) {
        throw std::invalid_argument("SweepSpec: jobs must be >= 1");
    }
    if (spec.family == StateFamily::tmst) {
        if (spec.axis.name != "s" && spec.axis.name != "r") {
            throw std::invalid_argument("SweepSpec: tmst sweeps run over 's' or 'r'");
        }
    } else {
        if (spec.axis.name != "s" && spec.axis.name != "u" && spec.axis.name != "s=u") {
            throw std::invalid_argument("SweepSpec: werner sweeps run over 's', 'u' or 's=u'");
        }
    }
}

namespace {

double fixed_or(const SweepSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.fixed.find(key);
    return it == spec.fixed.end() ? fallback : it->second;
}

CurvePoint sweep_point(const SweepSpec& spec, double x) {
    CurvePoint pt;
    pt.abscissa = x;
    if (spec.family == StateFamily::tmst) {
        const double s = spec.axis.name == "s" ? x : fixed_or(spec, "s", 0.5);
        const double r = spec.axis.name == "r" ? x : fixed_or(spec, "r", 0.0);
        const EtaThreshold th =
            eta_threshold(s, r, spec.criterion, spec.bisect_tol, spec.trunc_tol);
        if (th.found) {
            pt.threshold = th.eta;
            pt.converged = th.converged && th.monotone;
            pt.error_bound = th.error_bound;
        } else {
            pt.threshold = std::numeric_limits<double>::quiet_NaN();
            pt.converged = false;
        }
        return pt;
    }
    const double s = spec.axis.name == "u" ? fixed_or(spec, "s", 1.0) : x;
    const double u = spec.axis.name == "s" ? fixed_or(spec, "u", 1.0) : x;
    PThreshold th;
    switch (spec.criterion) {
        case Criterion::gaussian: th = p_steer_gaussian(s, u); break;
        case Criterion::type_i: th = p_steer_type_i(s, u); break;
        case Criterion::type_ii: th = p_steer_type_ii(s, u); break;
    }
    pt.threshold = th.value;
    pt.converged = true;
    pt.error_bound = 0.0;  // closed form
    return pt;
}

}  // namespace

ThresholdCurve run_sweep(const SweepSpec& spec_in) {
    SweepSpec spec = spec_in;
    validate(spec);
    if (spec.trunc_tol <= 0.0) {
        spec.trunc_tol = spec.bisect_tol / 100.0;
    }
    ThresholdCurve curve;
    curve.spec = spec;
    curve.points.resize(spec.axis.count);

    auto axis_value = [&](int i) {
        return spec.axis.min +
               (spec.axis.max - spec.axis.min) * i / static_cast<double>(spec.axis.count - 1);
    };

    const int n_threads = std::min(spec.jobs, spec.axis.count);
    if (n_threads <= 1) {
        for (int i = 0; i < spec.axis.count; ++i) {
            curve.points[i] = sweep_point(spec, axis_value(i));
        }
    } else {
        std::atomic<int> next{0};
        auto worker = [&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= spec.axis.count) break;
                curve.points[i] = sweep_point(spec, axis_value(i));
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    return curve;
}

void write_csv(const ThresholdCurve& curve, std::ostream& os) {
    os << "abscissa,threshold,converged,error_bound\n";
    for (const CurvePoint& pt : curve.points) {
        os << format_double(pt.abscissa) << ','
           << (std::isnan(pt.threshold) ? "nan" : format_double(pt.threshold)) << ','
           << (pt.converged ? "true" : "false") << ',' << format_double(pt.error_bound) << '\n';
    }
}

std::string to_json(const ThresholdCurve& curve) {
    nlohmann::json doc;
    doc["axis"] = {{"name", curve.spec.axis.name},
                   {"min", curve.spec.axis.min},
                   {"max", curve.spec.axis.max},
                   {"count", curve.spec.axis.count}};
    doc["criterion"] = to_string(curve.spec.criterion);
    doc["family"] = curve.spec.family == StateFamily::tmst ? "tmst" : "werner";
    doc["bisect_tol"] = curve.spec.bisect_tol;
    doc["trunc_tol"] = curve.spec.trunc_tol;
    doc["fixed"] = curve.spec.fixed;
    nlohmann::json rows = nlohmann::json::array();
    for (const CurvePoint& pt : curve.points) {
        nlohmann::json row;
        row["abscissa"] = pt.abscissa;
        if (std::isnan(pt.threshold)) {
            row["threshold"] = nullptr;
        } else {
            row["threshold"] = pt.threshold;
        }
        row["converged"] = pt.converged;
        row["error_bound"] = pt.error_bound;
        rows.push_back(row);
    }
    doc["points"] = rows;
    return doc.dump(2);
}

}  // namespace cvsteer
