// cvsteer: steering detection for two-mode continuous-variable states.
//
// Subcommands evaluate Fock elements of two-mode squeezed thermal states,
// pseudospin / Gaussian steering criteria, threshold sweeps, figure data
// files, and randomized self-verification against independent oracles.
//
// Exit codes: 0 success, 1 verification or numeric failure, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvsteer/fock.hpp"
#include "cvsteer/gaussian.hpp"
#include "cvsteer/hermite.hpp"
#include "cvsteer/mathutil.hpp"
#include "cvsteer/oracles.hpp"
#include "cvsteer/pseudospin.hpp"
#include "cvsteer/thresholds.hpp"
#include "cvsteer/werner.hpp"

#ifndef CVSTEER_GIT_REV
#define CVSTEER_GIT_REV "unknown"
#endif

namespace {

using nlohmann::json;
using namespace cvsteer;

constexpr const char* kVersion = "1.0.0";

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expected,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stod(item));
    }
    if (out.size() != expected) {
        throw CLI::ValidationError(what + ": expected " + std::to_string(expected) +
                                   " comma-separated values");
    }
    return out;
}

FockIndex parse_index(const std::string& text) {
    const auto v = parse_csv_doubles(text, 4, "--idx");
    FockIndex idx{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                  static_cast<int>(v[3])};
    validate(idx);
    return idx;
}

/// Writes `content` to path and a .meta.json sidecar next to it.
void write_with_sidecar(const std::string& path, const std::string& content, json meta) {
    {
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot open output file: " + path);
        }
        os << content;
    }
    meta["tool"] = "cvsteer";
    meta["version"] = kVersion;
    meta["commit"] = CVSTEER_GIT_REV;
    std::string meta_path = path;
    const auto dot = meta_path.find_last_of('.');
    if (dot != std::string::npos) {
        meta_path.resize(dot);
    }
    meta_path += ".meta.json";
    std::ofstream ms(meta_path, std::ios::binary);
    ms << meta.dump(2) << '\n';
}

void emit(const std::string& content, const std::string& out_path, json meta) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_with_sidecar(out_path, content, std::move(meta));
    }
}

std::string bool_str(bool v) { return v ? "true" : "false"; }

// ---------------------------------------------------------------------------
// steer / correlators state specification shared by several subcommands

struct StateSpec {
    std::string epr;     // "s"
    std::string tmst;    // "s,eta,r"
    std::string sf;      // "a,b,c,d"
    std::string werner;  // "p,s,u"

    bool is_werner() const { return !werner.empty(); }

    WernerParams werner_params() const {
        const auto v = parse_csv_doubles(werner, 3, "--werner");
        WernerParams wp{v[0], v[1], v[2]};
        validate(wp);
        return wp;
    }

    /// TMST parameters when the state was given generatively (or as a TMST
    /// standard form, via inversion).
    std::optional<TmstParams> tmst_params() const {
        if (!epr.empty()) {
            const auto v = parse_csv_doubles(epr, 1, "--epr-s");
            return TmstParams{v[0], 1.0, 0.0};
        }
        if (!tmst.empty()) {
            const auto v = parse_csv_doubles(tmst, 3, "--tmst");
            TmstParams p{v[0], v[1], v[2]};
            validate(p);
            return p;
        }
        if (!sf.empty()) {
            const StandardForm form = standard_form();
            if (std::abs(form.c + form.d) < 1e-9) {
                return tmst_params_from_standard_form(form);
            }
        }
        return std::nullopt;
    }

    StandardForm standard_form() const {
        if (!sf.empty()) {
            const auto v = parse_csv_doubles(sf, 4, "--sf");
            return StandardForm{v[0], v[1], v[2], v[3]};
        }
        if (!werner.empty()) {
            return werner_covariance(werner_params());
        }
        return tmst_covariance(*tmst_params());
    }
};

void add_state_flags(CLI::App* cmd, StateSpec& spec) {
    auto* o1 = cmd->add_option("--epr-s", spec.epr, "EPR state with squeezing s");
    auto* o2 = cmd->add_option("--tmst", spec.tmst, "TMST state as s,eta,r");
    auto* o3 = cmd->add_option("--sf", spec.sf, "standard form a,b,c,d");
    auto* o4 = cmd->add_option("--werner", spec.werner, "Werner state as p,s,u");
    o1->excludes(o2)->excludes(o3)->excludes(o4);
    o2->excludes(o3)->excludes(o4);
    o3->excludes(o4);
}

void require_one_state(const StateSpec& spec) {
    if (spec.epr.empty() && spec.tmst.empty() && spec.sf.empty() && spec.werner.empty()) {
        throw CLI::ValidationError("state", "one of --epr-s/--tmst/--sf/--werner is required");
    }
}

// ---------------------------------------------------------------------------

int run_fock(const StateSpec& state, const std::vector<std::string>& idx_args, int cutoff,
             const std::string& out, const std::string& format) {
    const auto params_opt = state.tmst_params();
    if (!params_opt) {
        throw CLI::ValidationError("fock", "state must be a TMST (generative or d = -c form)");
    }
    const TmstParams p = *params_opt;

    if (!idx_args.empty()) {
        std::ostringstream os;
        if (format == "json") {
            json doc;
            doc["params"] = {{"s", p.s}, {"eta", p.eta}, {"r", p.r}};
            doc["truncation_error"] = 0.0;
            json rows = json::array();
            for (const auto& arg : idx_args) {
                const FockIndex idx = parse_index(arg);
                rows.push_back({idx.m1, idx.m2, idx.n1, idx.n2, tmst_fock_element(p, idx)});
            }
            doc["elements"] = rows;
            os << doc.dump(2) << '\n';
        } else {
            os << "m1,m2,n1,n2,value\n";
            for (const auto& arg : idx_args) {
                const FockIndex idx = parse_index(arg);
                os << idx.m1 << ',' << idx.m2 << ',' << idx.n1 << ',' << idx.n2 << ','
                   << format_double(tmst_fock_element(p, idx)) << '\n';
            }
        }
        std::cerr << "# elements are exact closed-form values (single finite sum); "
                     "truncation error 0\n";
        emit(os.str(), out,
             json{{"command", "fock"},
                  {"params", {{"s", p.s}, {"eta", p.eta}, {"r", p.r}}},
                  {"columns", {"m1", "m2", "n1", "n2", "value"}},
                  {"truncation_error", 0.0}});
        return 0;
    }

    // No indices requested: dump the truncated block.
    const int cut = cutoff > 0 ? cutoff : default_cutoff(p);
    const TruncatedDensityMatrix rho = truncated_tmst_density(p, cut);
    std::cerr << "# cutoff " << cut << ", tail trace bound "
              << format_double(rho.tail_trace_bound) << '\n';
    std::string content;
    if (format == "json") {
        content = dump_sparse_json(rho) + "\n";
    } else {
        std::ostringstream os;
        dump_sparse_csv(rho, os);
        content = os.str();
    }
    emit(content, out,
         json{{"command", "fock"},
              {"params", {{"s", p.s}, {"eta", p.eta}, {"r", p.r}}},
              {"cutoff", cut},
              {"columns", {"m1", "m2", "n1", "n2", "value"}},
              {"tail_trace_bound", rho.tail_trace_bound}});
    return 0;
}

int run_steer(const StateSpec& state, const std::string& criterion_name, double tol) {
    const Criterion criterion = criterion_from_string(criterion_name);
    double value = 0.0;
    double error_bound = 0.0;
    bool steerable = false;
    std::string quantity;

    if (state.is_werner()) {
        const WernerParams wp = state.werner_params();
        switch (criterion) {
            case Criterion::gaussian: {
                const StandardForm sf = werner_covariance(wp);
                value = gaussian_steering_gap(sf);
                steerable = is_gaussian_steerable_AtoB(sf);
                quantity = "det_gap";
                break;
            }
            case Criterion::type_i: {
                const MomentValue m = moment_value(werner_type_i_correlators(wp));
                value = m.value;
                steerable = m.steerable;
                quantity = "moment";
                break;
            }
            case Criterion::type_ii: {
                const MomentValue m = moment_value(werner_type_ii_correlators(wp));
                value = m.value;
                steerable = m.steerable;
                quantity = "moment";
                break;
            }
        }
    } else if (criterion == Criterion::type_i) {
        const auto params_opt = state.tmst_params();
        if (!params_opt) {
            throw CLI::ValidationError("steer", "type-i criterion needs a TMST state (d = -c)");
        }
        const TypeICorrelators corr = type_i_correlators(*params_opt, tol / 100.0);
        const MomentValue m = moment_value(corr.correlators);
        value = m.value;
        steerable = m.steerable;
        error_bound = moment_error_bound(corr.correlators, corr.tail_bound);
        quantity = "moment";
    } else {
        const StandardForm sf = state.standard_form();
        if (criterion == Criterion::gaussian) {
            value = gaussian_steering_gap(sf);
            steerable = is_gaussian_steerable_AtoB(sf);
            quantity = "det_gap";
        } else {
            const MomentValue m = moment_value(type_ii_correlators(sf));
            value = m.value;
            steerable = m.steerable;
            quantity = "moment";
        }
    }

    std::cout << "criterion=" << to_string(criterion) << '\n'
              << quantity << '=' << format_double(value) << '\n'
              << "steerable=" << bool_str(steerable) << '\n'
              << "error_bound=" << format_double(error_bound) << '\n';
    return 0;
}

int run_correlators(const StateSpec& state, const std::string& type_name, double tol) {
    CorrelatorTriple c;
    double tail = 0.0;
    if (state.is_werner()) {
        const WernerParams wp = state.werner_params();
        c = type_name == "type-ii" ? werner_type_ii_correlators(wp)
                                   : werner_type_i_correlators(wp);
    } else if (type_name == "type-ii") {
        c = type_ii_correlators(state.standard_form());
    } else {
        const auto params_opt = state.tmst_params();
        if (!params_opt) {
            throw CLI::ValidationError("correlators",
                                       "type-i correlators need a TMST state (d = -c)");
        }
        const TypeICorrelators corr = type_i_correlators(*params_opt, tol / 100.0);
        c = corr.correlators;
        tail = corr.tail_bound;
    }
    std::cout << "type=" << type_name << '\n'
              << "xx=" << format_double(c.xx) << '\n'
              << "yy=" << format_double(c.yy) << '\n'
              << "zz=" << format_double(c.zz) << '\n'
              << "tail_bound=" << format_double(tail) << '\n';
    return 0;
}

int run_threshold(bool have_axis, const SweepSpec& spec, double s, double r,
                  const std::string& criterion_name, double tol, const std::string& out,
                  const std::string& format) {
    if (!have_axis) {
        const EtaThreshold th = eta_threshold(s, r, criterion_from_string(criterion_name), tol);
        std::cout << "criterion=" << criterion_name << '\n';
        if (th.found) {
            std::cout << "eta_threshold=" << format_double(th.eta) << '\n'
                      << "converged=" << bool_str(th.converged) << '\n'
                      << "error_bound=" << format_double(th.error_bound) << '\n';
        } else {
            std::cout << "eta_threshold=none\n";
        }
        if (!th.monotone) {
            std::cout << "monotonicity_probe=failed\n";
        }
        return 0;
    }
    const ThresholdCurve curve = run_sweep(spec);
    std::string content;
    if (format == "json") {
        content = to_json(curve) + "\n";
    } else {
        std::ostringstream os;
        write_csv(curve, os);
        content = os.str();
    }
    emit(content, out,
         json{{"command", "threshold"},
              {"criterion", to_string(spec.criterion)},
              {"family", spec.family == StateFamily::tmst ? "tmst" : "werner"},
              {"axis",
               {{"name", spec.axis.name},
                {"min", spec.axis.min},
                {"max", spec.axis.max},
                {"count", spec.axis.count}}},
              {"fixed", spec.fixed},
              {"bisect_tol", spec.bisect_tol},
              {"trunc_tol", spec.trunc_tol > 0 ? spec.trunc_tol : spec.bisect_tol / 100.0},
              {"columns", {"abscissa", "threshold", "converged", "error_bound"}}});
    return 0;
}

int run_werner_cmd(double s, double u, std::optional<double> p) {
    const PThreshold pi = p_steer_type_i(s, u);
    const PThreshold pii = p_steer_type_ii(s, u);
    const PThreshold pg = p_steer_gaussian(s, u);
    std::cout << "p_steer_type_i=" << format_double(pi.value)
              << (pi.never_steerable ? " (never steerable)" : "") << '\n'
              << "p_steer_type_ii=" << format_double(pii.value)
              << (pii.never_steerable ? " (never steerable)" : "") << '\n'
              << "p_steer_gaussian=" << format_double(pg.value)
              << (pg.never_steerable ? " (never steerable)" : "") << '\n';
    if (p) {
        std::cout << "steerable_type_i=" << bool_str(!pi.never_steerable && *p > pi.value) << '\n'
                  << "steerable_type_ii=" << bool_str(!pii.never_steerable && *p > pii.value)
                  << '\n'
                  << "steerable_gaussian=" << bool_str(!pg.never_steerable && *p > pg.value)
                  << '\n';
    }
    return 0;
}

int run_hermite(const std::vector<std::string>& idx_args, const std::string& theta_arg,
                const std::string& sf_arg, bool with_taylor, bool with_fock) {
    ThetaParams th;
    std::optional<StandardForm> sf;
    if (!theta_arg.empty()) {
        const auto v = parse_csv_doubles(theta_arg, 3, "--theta");
        th = ThetaParams{v[0], v[1], v[2]};
    } else if (!sf_arg.empty()) {
        const auto v = parse_csv_doubles(sf_arg, 3, "--sf");
        sf = StandardForm{v[0], v[1], v[2], -v[2]};
        th = theta_from_standard_form(v[0], v[1], v[2]);
    } else {
        throw CLI::ValidationError("hermite", "one of --theta/--sf is required");
    }
    if (with_fock && !sf) {
        throw CLI::ValidationError("hermite", "--fock requires --sf");
    }
    std::cout << "e=" << format_double(th.e) << " f=" << format_double(th.f)
              << " g=" << format_double(th.g) << '\n';
    for (const auto& arg : idx_args) {
        const FockIndex idx = parse_index(arg);
        std::cout << "H[" << idx.m1 << ',' << idx.m2 << ',' << idx.n1 << ',' << idx.n2
                  << "]=" << format_double(hermite_at_origin(idx, th));
        if (with_taylor) {
            std::cout << " taylor=" << format_double(hermite_taylor_oracle(idx, th));
        }
        if (with_fock) {
            std::cout << " fock=" << format_double(fock_from_hermite(*sf, idx));
        }
        std::cout << '\n';
    }
    return 0;
}

int run_verify(const std::string& scope, int cases, int max_index, int max_degree,
               std::uint64_t seed) {
    bool ok = true;
    if (scope == "all" || scope == "fock") {
        const VerifyReport rep = verify_fock(cases, max_index, 1e-10, seed);
        std::cout << format_report(rep, "fock: closed form vs independent oracles");
        ok = ok && rep.pass();
    }
    if (scope == "all" || scope == "hermite") {
        const VerifyReport rep = verify_hermite(20, max_degree, 1e-10, seed + 1);
        std::cout << format_report(rep, "hermite: closed form vs expansion and correspondence");
        ok = ok && rep.pass();
    }
    if (scope == "all" || scope == "correlators") {
        const VerifyReport rep = verify_correlators(std::min(cases, 20), 1e-8, seed + 2);
        std::cout << format_report(rep, "correlators: series vs Fock-side expectations");
        ok = ok && rep.pass();
    }
    return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Figure data files

std::string sweep_column_csv(const std::vector<double>& xs,
                             const std::vector<std::vector<double>>& cols,
                             const std::vector<std::string>& headers) {
    std::ostringstream os;
    for (std::size_t i = 0; i < headers.size(); ++i) {
        os << (i ? "," : "") << headers[i];
    }
    os << '\n';
    for (std::size_t row = 0; row < xs.size(); ++row) {
        os << format_double(xs[row]);
        for (const auto& col : cols) {
            os << ',' << (std::isnan(col[row]) ? "nan" : format_double(col[row]));
        }
        os << '\n';
    }
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * i / static_cast<double>(n - 1);
    }
    return xs;
}

std::vector<double> sweep_thresholds(const std::vector<double>& xs, const std::string& axis,
                                     Criterion criterion, double fixed_s, double fixed_r,
                                     double tol, int jobs) {
    SweepSpec spec;
    spec.axis = {axis, xs.front(), xs.back(), static_cast<int>(xs.size())};
    spec.criterion = criterion;
    spec.fixed["s"] = fixed_s;
    spec.fixed["r"] = fixed_r;
    spec.bisect_tol = tol;
    spec.jobs = jobs;
    const ThresholdCurve curve = run_sweep(spec);
    std::vector<double> out;
    out.reserve(curve.points.size());
    for (const auto& pt : curve.points) {
        out.push_back(pt.threshold);
    }
    return out;
}

int run_figure(const std::string& id, std::string out, int points, double tol, int jobs) {
    json meta{{"command", "figure"},
              {"figure", id},
              {"bisect_tol", tol},
              {"trunc_tol", tol / 100.0}};
    std::string csv;

    if (id == "fig2") {
        const int n = points > 0 ? points : 121;
        const auto xs = linspace(0.0, 3.0, n);
        std::vector<double> mi(n), mii(n);
        for (int i = 0; i < n; ++i) {
            const double t = std::tanh(2.0 * xs[i]);
            const double g = gudermannian(2.0 * xs[i]);
            mi[i] = 1.0 + 2.0 * t * t;
            mii[i] = 1.0 + 8.0 / (std::numbers::pi * std::numbers::pi) * g * g;
        }
        csv = sweep_column_csv(xs, {mi, mii}, {"s", "m_type_i", "m_type_ii"});
        meta["columns"] = {"s", "m_type_i", "m_type_ii"};
        meta["state"] = "EPR";
    } else if (id == "fig3") {
        const int n = points > 0 ? points : 30;
        const auto xs = linspace(0.05, 1.5, n);
        const auto eg = sweep_thresholds(xs, "s", Criterion::gaussian, 0, 0.0, tol, jobs);
        const auto ei = sweep_thresholds(xs, "s", Criterion::type_i, 0, 0.0, tol, jobs);
        const auto eii = sweep_thresholds(xs, "s", Criterion::type_ii, 0, 0.0, tol, jobs);
        csv = sweep_column_csv(xs, {eg, ei, eii},
                               {"s", "eta_gaussian", "eta_type_i", "eta_type_ii"});
        meta["columns"] = {"s", "eta_gaussian", "eta_type_i", "eta_type_ii"};
        meta["state"] = "TMST, r = 0";
    } else if (id == "fig4a") {
        const int n = points > 0 ? points : 25;
        const auto xs = linspace(0.0, 1.0, n);
        const std::vector<double> s_values{0.2, 0.5, 1.0};
        std::vector<std::vector<double>> cols;
        std::vector<std::string> headers{"r"};
        for (double s : s_values) {
            cols.push_back(sweep_thresholds(xs, "r", Criterion::type_i, s, 0, tol, jobs));
            headers.push_back("eta_type_i_s" + format_double(s));
        }
        cols.push_back(sweep_thresholds(xs, "r", Criterion::gaussian, 0.5, 0, tol, jobs));
        headers.push_back("eta_gaussian");
        csv = sweep_column_csv(xs, cols, headers);
        meta["columns"] = headers;
        meta["state"] = "TMST";
    } else if (id == "fig4b") {
        const int n = points > 0 ? points : 30;
        const auto xs = linspace(0.05, 1.5, n);
        const std::vector<double> r_values{0.25, 0.5};
        std::vector<std::vector<double>> cols;
        std::vector<std::string> headers{"s"};
        for (double r : r_values) {
            cols.push_back(sweep_thresholds(xs, "s", Criterion::type_i, 0, r, tol, jobs));
            headers.push_back("eta_type_i_r" + format_double(r));
        }
        for (double r : r_values) {
            cols.push_back(sweep_thresholds(xs, "s", Criterion::gaussian, 0, r, tol, jobs));
            headers.push_back("eta_gaussian_r" + format_double(r));
        }
        csv = sweep_column_csv(xs, cols, headers);
        meta["columns"] = headers;
        meta["state"] = "TMST";
    } else if (id == "fig5") {
        const int n = points > 0 ? points : 40;
        const auto svals = linspace(0.1, 3.0, n);
        const auto uvals = linspace(0.1, 3.0, n);
        std::ostringstream os;
        os << "s,u,p_steer_type_i\n";
        for (double s : svals) {
            for (double u : uvals) {
                os << format_double(s) << ',' << format_double(u) << ','
                   << format_double(p_steer_type_i(s, u).value) << '\n';
            }
        }
        csv = os.str();
        meta["columns"] = {"s", "u", "p_steer_type_i"};
        meta["state"] = "Werner";
    } else if (id == "fig6") {
        const int n = points > 0 ? points : 100;
        const auto xs = linspace(0.05, 5.0, n);
        std::vector<double> pi(n), pii(n), pg(n);
        for (int i = 0; i < n; ++i) {
            pi[i] = p_steer_type_i(xs[i], xs[i]).value;
            pii[i] = p_steer_type_ii(xs[i], xs[i]).value;
            pg[i] = p_steer_gaussian(xs[i], xs[i]).value;
        }
        csv = sweep_column_csv(xs, {pi, pii, pg}, {"s", "p_type_i", "p_type_ii", "p_gaussian"});
        meta["columns"] = {"s", "p_type_i", "p_type_ii", "p_gaussian"};
        meta["state"] = "Werner, u = s";
    } else {
        throw CLI::ValidationError("figure", "unknown figure id: " + id);
    }

    if (out.empty()) {
        out = id + ".csv";
    }
    write_with_sidecar(out, csv, std::move(meta));
    std::cerr << "# wrote " << out << " and metadata sidecar\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"steering detection for two-mode continuous-variable states"};
    app.require_subcommand(1);

    double tol = 1e-6;
    app.add_option("--tol", tol, "bisection / evaluation tolerance")
        ->envname("CVSTEER_TOL")
        ->check(CLI::PositiveNumber);

    // fock ------------------------------------------------------------------
    auto* fock_cmd = app.add_subcommand("fock", "Fock elements of a TMST state");
    StateSpec fock_state;
    add_state_flags(fock_cmd, fock_state);
    double fock_s = 0.0, fock_eta = 1.0, fock_r = 0.0;
    auto* fs = fock_cmd->add_option("--s", fock_s, "EPR squeezing");
    fock_cmd->add_option("--eta", fock_eta, "attenuator transmissivity");
    fock_cmd->add_option("--r", fock_r, "amplifier squeezing");
    std::vector<std::string> fock_indices;
    fock_cmd->add_option("--idx", fock_indices, "element index m1,m2,n1,n2 (repeatable)");
    int fock_cutoff = 0;
    fock_cmd->add_option("--cutoff", fock_cutoff, "Fock cutoff for the block dump");
    std::string fock_out, fock_format = "csv";
    fock_cmd->add_option("--out", fock_out, "output path");
    fock_cmd->add_option("--format", fock_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // steer -----------------------------------------------------------------
    auto* steer_cmd = app.add_subcommand("steer", "steering verdict for a state");
    StateSpec steer_state;
    add_state_flags(steer_cmd, steer_state);
    std::string steer_criterion;
    steer_cmd->add_option("--criterion", steer_criterion, "gaussian, type-i or type-ii")
        ->required()
        ->check(CLI::IsMember({"gaussian", "type-i", "type-ii"}));

    // correlators -----------------------------------------------------------
    auto* corr_cmd = app.add_subcommand("correlators", "pseudospin correlators of a state");
    StateSpec corr_state;
    add_state_flags(corr_cmd, corr_state);
    std::string corr_type = "type-i";
    corr_cmd->add_option("--type", corr_type, "type-i or type-ii")
        ->check(CLI::IsMember({"type-i", "type-ii"}));

    // threshold --------------------------------------------------------------
    auto* th_cmd = app.add_subcommand("threshold", "criterion thresholds and sweeps");
    double th_s = 0.5, th_r = 0.0, th_u = 1.0;
    th_cmd->add_option("--s", th_s, "fixed squeezing");
    th_cmd->add_option("--r", th_r, "fixed amplifier squeezing");
    th_cmd->add_option("--u", th_u, "fixed Werner thermal parameter");
    std::string th_criterion = "gaussian";
    th_cmd->add_option("--criterion", th_criterion, "gaussian, type-i or type-ii")
        ->check(CLI::IsMember({"gaussian", "type-i", "type-ii"}));
    std::string th_axis;
    auto* th_axis_opt = th_cmd->add_option("--axis", th_axis, "sweep axis (s, r, u, s=u)");
    double th_min = 0.0, th_max = 1.0;
    int th_points = 20;
    th_cmd->add_option("--min", th_min, "axis minimum")->needs(th_axis_opt);
    th_cmd->add_option("--max", th_max, "axis maximum")->needs(th_axis_opt);
    th_cmd->add_option("--points", th_points, "axis point count")->needs(th_axis_opt);
    std::string th_family = "tmst";
    th_cmd->add_option("--family", th_family, "tmst or werner")
        ->check(CLI::IsMember({"tmst", "werner"}));
    int th_jobs = 1;
    th_cmd->add_option("--jobs", th_jobs, "parallel sweep workers")->check(CLI::PositiveNumber);
    std::string th_out, th_format = "csv";
    th_cmd->add_option("--out", th_out, "output path");
    th_cmd->add_option("--format", th_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    // werner ------------------------------------------------------------------
    auto* w_cmd = app.add_subcommand("werner", "Werner-state steering thresholds");
    double w_s = 1.0, w_u = -1.0;
    w_cmd->add_option("--s", w_s, "EPR squeezing")->required();
    w_cmd->add_option("--u", w_u, "thermal parameter (defaults to s)");
    double w_p = -1.0;
    w_cmd->add_option("--p", w_p, "mixture probability for verdicts");

    // hermite -----------------------------------------------------------------
    auto* h_cmd = app.add_subcommand("hermite", "four-dimensional Hermite polynomials at 0");
    std::vector<std::string> h_indices;
    h_cmd->add_option("--idx", h_indices, "index m1,m2,n1,n2 (repeatable)")->required();
    std::string h_theta, h_sf;
    auto* h_theta_opt = h_cmd->add_option("--theta", h_theta, "coupling parameters e,f,g");
    auto* h_sf_opt = h_cmd->add_option("--sf", h_sf, "TMST standard form a,b,c");
    h_theta_opt->excludes(h_sf_opt);
    bool h_taylor = false, h_fock = false;
    h_cmd->add_flag("--taylor", h_taylor, "also print the expansion-oracle value");
    h_cmd->add_flag("--fock", h_fock, "also print the corresponding Fock element");

    // verify ------------------------------------------------------------------
    auto* v_cmd = app.add_subcommand("verify", "randomized self-checks against oracles");
    std::string v_scope = "all";
    v_cmd->add_option("scope", v_scope, "all, fock, hermite or correlators")
        ->check(CLI::IsMember({"all", "fock", "hermite", "correlators"}));
    int v_cases = 50, v_max_index = 5, v_max_degree = 8;
    v_cmd->add_option("--cases", v_cases, "random parameter draws");
    v_cmd->add_option("--max-index", v_max_index, "largest Fock index compared");
    v_cmd->add_option("--max-degree", v_max_degree, "largest Hermite total degree");
    std::uint64_t v_seed = 20220901;
    v_cmd->add_option("--seed", v_seed, "RNG seed");

    // figure ------------------------------------------------------------------
    auto* f_cmd = app.add_subcommand("figure", "regenerate figure data files");
    std::string f_id;
    f_cmd->add_option("id", f_id, "fig2, fig3, fig4a, fig4b, fig5 or fig6")->required();
    std::string f_out;
    f_cmd->add_option("--out", f_out, "output CSV path (default <id>.csv)");
    int f_points = 0;
    f_cmd->add_option("--points", f_points, "grid resolution override");
    int f_jobs = 1;
    f_cmd->add_option("--jobs", f_jobs, "parallel sweep workers")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*fock_cmd) {
            if (fock_state.epr.empty() && fock_state.tmst.empty() && fock_state.sf.empty() &&
                fock_state.werner.empty()) {
                if (!*fs) {
                    throw CLI::ValidationError("fock", "provide --s/--eta/--r or a state flag");
                }
                std::ostringstream tmst;
                tmst << fock_s << ',' << fock_eta << ',' << fock_r;
                fock_state.tmst = tmst.str();
            }
            return run_fock(fock_state, fock_indices, fock_cutoff, fock_out, fock_format);
        }
        if (*steer_cmd) {
            require_one_state(steer_state);
            return run_steer(steer_state, steer_criterion, tol);
        }
        if (*corr_cmd) {
            require_one_state(corr_state);
            return run_correlators(corr_state, corr_type, tol);
        }
        if (*th_cmd) {
            SweepSpec spec;
            const bool have_axis = !th_axis.empty();
            if (have_axis) {
                spec.axis = {th_axis, th_min, th_max, th_points};
                spec.criterion = criterion_from_string(th_criterion);
                spec.family = th_family == "werner" ? StateFamily::werner : StateFamily::tmst;
                spec.fixed["s"] = th_s;
                spec.fixed["r"] = th_r;
                spec.fixed["u"] = th_u;
                spec.bisect_tol = tol;
                spec.jobs = th_jobs;
            }
            return run_threshold(have_axis, spec, th_s, th_r, th_criterion, tol, th_out,
                                 th_format);
        }
        if (*w_cmd) {
            return run_werner_cmd(w_s, w_u < 0 ? w_s : w_u,
                                  w_p < 0 ? std::nullopt : std::optional<double>(w_p));
        }
        if (*h_cmd) {
            return run_hermite(h_indices, h_theta, h_sf, h_taylor, h_fock);
        }
        if (*v_cmd) {
            return run_verify(v_scope, v_cases, v_max_index, v_max_degree, v_seed);
        }
        if (*f_cmd) {
            return run_figure(f_id, f_out, f_points, tol, f_jobs);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
