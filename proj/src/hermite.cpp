#include "cvsteer/hermite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "cvsteer/mathutil.hpp"

namespace cvsteer {

ThetaParams theta_from_standard_form(double a, double b, double c) {
    const double k = (a + 1.0) * (b + 1.0) - c * c;
    if (std::abs(k) < 1e-12) {
        throw std::invalid_argument("theta_from_standard_form: degenerate denominator");
    }
    ThetaParams th;
    th.e = 2.0 * c / k;
    th.f = ((a - 1.0) * (b + 1.0) - c * c) / k;
    th.g = ((a + 1.0) * (b - 1.0) - c * c) / k;
    return th;
}

double hermite_at_origin(const HermiteIndex& idx, const ThetaParams& th) {
    validate(idx);
    const int m1 = idx.m1, m2 = idx.m2, n1 = idx.n1, n2 = idx.n2;
    if (m1 + n2 != n1 + m2) {
        return 0.0;
    }
    const int k_lo = std::max(0, m2 - m1);
    const int k_hi = std::min(m2, n2);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        // Grouping keeps the value bitwise symmetric under (m1,m2)<->(n1,n2).
        const double root =
            std::exp(0.5 * ((log_binomial(m2, k) + log_binomial(n2, k)) +
                            (log_binomial(m1, m2 - k) + log_binomial(n1, n2 - k))));
        sum += root * pow_int(th.e, m2 + n2 - 2 * k) * pow_int(th.f, m1 - m2 + k) *
               pow_int(th.g, k);
    }
    const double fact_root = std::exp(0.5 * ((log_factorial(m1) + log_factorial(m2)) +
                                             (log_factorial(n1) + log_factorial(n2))));
    return fact_root * sum;
}

namespace {

constexpr int kOracleMaxDegree = 12;

// Sparse polynomial in four variables, keyed by packed exponents.
using Poly = std::map<std::array<int, 4>, double>;

int total_degree(const std::array<int, 4>& mono) {
    return mono[0] + mono[1] + mono[2] + mono[3];
}

Poly truncated_product(const Poly& p, const Poly& q, int max_degree) {
    Poly out;
    for (const auto& [pm, pc] : p) {
        for (const auto& [qm, qc] : q) {
            std::array<int, 4> mono{pm[0] + qm[0], pm[1] + qm[1], pm[2] + qm[2], pm[3] + qm[3]};
            if (total_degree(mono) > max_degree) continue;
            out[mono] += pc * qc;
        }
    }
    return out;
}

}  // namespace

HermiteTaylorTable::HermiteTaylorTable(const ThetaParams& th, int max_degree)
    : max_degree_(max_degree) {
    if (max_degree < 0 || max_degree > kOracleMaxDegree) {
        throw std::invalid_argument("HermiteTaylorTable: degree above oracle scale");
    }
    // Quadratic form of the generating exponential, -x^T Theta x / 2.
    Poly quad;
    quad[{1, 1, 0, 0}] += th.e;
    quad[{1, 0, 1, 0}] += th.f;
    quad[{0, 1, 0, 1}] += th.g;
    quad[{0, 0, 1, 1}] += th.e;

    coeffs_[{0, 0, 0, 0}] = 1.0;
    Poly power = coeffs_;
    double inv_fact = 1.0;
    for (int j = 1; 2 * j <= max_degree; ++j) {
        power = truncated_product(power, quad, max_degree);
        inv_fact /= j;
        for (const auto& [mono, coeff] : power) {
            coeffs_[mono] += inv_fact * coeff;
        }
    }
}

double HermiteTaylorTable::value(const HermiteIndex& idx) const {
    validate(idx);
    const int total = idx.m1 + idx.m2 + idx.n1 + idx.n2;
    if (total > max_degree_) {
        throw std::invalid_argument("HermiteTaylorTable: total degree above oracle scale");
    }
    const std::array<int, 4> target{idx.m1, idx.m2, idx.n1, idx.n2};
    const auto it = coeffs_.find(target);
    const double coeff = it == coeffs_.end() ? 0.0 : it->second;
    const double sign = total % 2 == 0 ? 1.0 : -1.0;
    const double facts = std::exp(log_factorial(idx.m1) + log_factorial(idx.m2) +
                                  log_factorial(idx.n1) + log_factorial(idx.n2));
    return sign * facts * coeff;
}

double hermite_taylor_oracle(const HermiteIndex& idx, const ThetaParams& th) {
    validate(idx);
    const int total = idx.m1 + idx.m2 + idx.n1 + idx.n2;
    if (total > kOracleMaxDegree) {
        throw std::invalid_argument("hermite_taylor_oracle: total degree above oracle scale");
    }
    return HermiteTaylorTable(th, kOracleMaxDegree).value(idx);
}

double fock_from_hermite(const StandardForm& sf_in, const FockIndex& idx) {
    validate(idx);
    StandardForm sf = sf_in;
    canonicalize(sf);
    if (std::abs(sf.c + sf.d) > 1e-9 * std::max(1.0, std::abs(sf.c))) {
        throw std::invalid_argument("fock_from_hermite: requires a TMST form (d = -c)");
    }
    if (!is_bona_fide(sf)) {
        throw std::invalid_argument("fock_from_hermite: state is not physical");
    }
    const ThetaParams th = theta_from_standard_form(sf.a, sf.b, sf.c);
    const double h = hermite_at_origin(idx, th);
    const Eigen::Matrix4d vp1 = to_matrix(sf) + Eigen::Matrix4d::Identity();
    const double det = vp1.determinant();
    const double fact_root = std::exp(0.5 * (log_factorial(idx.m1) + log_factorial(idx.m2) +
                                             log_factorial(idx.n1) + log_factorial(idx.n2)));
    return 4.0 * h / (std::sqrt(det) * fact_root);
}

TmstParams tmst_params_from_standard_form(const StandardForm& sf_in) {
    StandardForm sf = sf_in;
    canonicalize(sf);
    if (std::abs(sf.c + sf.d) > 1e-9 * std::max(1.0, std::abs(sf.c))) {
        throw std::invalid_argument("tmst_params_from_standard_form: requires d = -c");
    }
    if (sf.b < 1.0 - 1e-12 || sf.a < 1.0 - 1e-12) {
        throw std::invalid_argument("tmst_params_from_standard_form: diagonal below vacuum level");
    }
    TmstParams p;
    const double b = std::max(sf.b, 1.0);
    p.s = 0.5 * std::acosh(b);

    if (b - 1.0 < 1e-12) {
        // Degenerate source: no squeezing, so no cross correlations allowed.
        if (std::abs(sf.c) > 1e-9) {
            throw std::invalid_argument(
                "tmst_params_from_standard_form: c != 0 is unreachable for b = 1");
        }
        p.eta = 1.0;
        p.r = 0.5 * std::acosh(std::max(sf.a, 1.0));
        return p;
    }

    const double k = (sf.a + 1.0) * (b + 1.0) - sf.c * sf.c;
    const double ch2 = k / (2.0 * (b + 1.0));
    if (ch2 < 1.0 - 1e-9) {
        throw std::invalid_argument(
            "tmst_params_from_standard_form: a below the reachable floor for given b, c");
    }
    p.r = std::acosh(std::sqrt(std::max(ch2, 1.0)));
    const double eta = sf.c * sf.c / ((b * b - 1.0) * std::max(ch2, 1.0));
    if (eta > 1.0 + 1e-9) {
        throw std::invalid_argument("tmst_params_from_standard_form: transmissivity above 1");
    }
    p.eta = std::clamp(eta, 0.0, 1.0);
    return p;
}

double det_relation_residual(const TmstParams& p) {
    validate(p);
    const double t = std::tanh(p.s);
    const double lhs = (1.0 - t * t) / (std::cosh(p.r) * std::cosh(p.r));
    const Eigen::Matrix4d vp1 =
        to_matrix(tmst_covariance(p)) + Eigen::Matrix4d::Identity();
    const double rhs = 4.0 / std::sqrt(vp1.determinant());
    return std::abs(lhs - rhs);
}

}  // namespace cvsteer
