#include "cvsteer/fock.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cvsteer/mathutil.hpp"

namespace cvsteer {

void validate(const FockIndex& idx) {
    if (idx.m1 < 0 || idx.m2 < 0 || idx.n1 < 0 || idx.n2 < 0) {
        throw std::invalid_argument("FockIndex: indices must be >= 0");
    }
}

double tmst_fock_element(const TmstParams& p, const FockIndex& idx) {
    validate(p);
    validate(idx);
    const int m1 = idx.m1, m2 = idx.m2, n1 = idx.n1, n2 = idx.n2;
    if (m1 + n2 != n1 + m2) {
        return 0.0;
    }
    const double t = std::tanh(p.s);
    const double th = std::tanh(p.r);
    const double ich = 1.0 / std::cosh(p.r);

    const int k_lo = std::max(0, m2 - m1);
    const int k_hi = std::min(m2, n2);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        // Grouping keeps the value bitwise symmetric under (m1,m2)<->(n1,n2).
        const double log_binoms = 0.5 * ((log_binomial(m2, k) + log_binomial(n2, k)) +
                                         (log_binomial(m1, m2 - k) + log_binomial(n1, n2 - k)));
        double term = std::exp(log_binoms);
        term *= std::pow(p.eta, 0.5 * (m2 + n2) - k);
        term *= pow_int(1.0 - p.eta, k);
        term *= pow_int(th, 2 * (m1 - m2 + k));
        term *= pow_int(ich, 2 + m2 + n2 - 2 * k);
        sum += term;
    }
    return (1.0 - t * t) * pow_int(t, m2 + n2) * sum;
}

DyadBlock loss_map_on_dyad(int m, int n, double eta) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("loss_map_on_dyad: indices must be >= 0");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("loss_map_on_dyad: eta must lie in [0,1]");
    }
    DyadBlock block;
    const int k_max = std::min(m, n);
    block.terms.reserve(k_max + 1);
    for (int k = 0; k <= k_max; ++k) {
        double coeff = std::exp(0.5 * (log_binomial(m, k) + log_binomial(n, k)));
        coeff *= std::pow(eta, 0.5 * (m + n) - k);
        coeff *= pow_int(1.0 - eta, k);
        if (coeff != 0.0) {
            block.terms.push_back({m - k, n - k, coeff});
        }
    }
    return block;
}

DyadBlock amplifier_map_on_dyad(int m, int n, double r, int cutoff, double tail_tol) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("amplifier_map_on_dyad: indices must be >= 0");
    }
    if (!(r >= 0.0)) {
        throw std::invalid_argument("amplifier_map_on_dyad: r must be >= 0");
    }
    DyadBlock block;
    const double th2 = std::tanh(r) * std::tanh(r);
    const double pref = pow_int(1.0 / std::cosh(r), m + n + 2);
    for (int l = 0;; ++l) {
        if (m + l >= cutoff || n + l >= cutoff) {
            // Hard cutoff: bound the rest by the geometric tail once the
            // term ratio has dropped below 1.
            double coeff = pref * std::exp(0.5 * (log_binomial(m + l, m) + log_binomial(n + l, n))) *
                           pow_int(th2, l);
            const double ratio =
                th2 * std::sqrt(static_cast<double>(m + l + 1) * (n + l + 1)) / (l + 1);
            block.tail_bound = ratio < 1.0 ? coeff / (1.0 - ratio) : coeff * 1e6;
            break;
        }
        const double coeff = pref *
                             std::exp(0.5 * (log_binomial(m + l, m) + log_binomial(n + l, n))) *
                             pow_int(th2, l);
        block.terms.push_back({m + l, n + l, coeff});
        if (th2 == 0.0) {
            break;
        }
        // Ratio of consecutive coefficients; decreasing in l, so once it is
        // below 1 the remaining sum is dominated by a geometric series.
        const double ratio = th2 * std::sqrt(static_cast<double>(m + l + 1) * (n + l + 1)) / (l + 1);
        if (ratio < 1.0) {
            const double tail = coeff * ratio / (1.0 - ratio);
            if (tail < tail_tol) {
                block.tail_bound = tail;
                break;
            }
        }
    }
    return block;
}

double FourModeState::norm2() const {
    double n2 = 0.0;
    for (double a : amp) {
        n2 += a * a;
    }
    return n2;
}

FourModeState purified_state_vector(const TmstParams& p, int cutoff) {
    validate(p);
    if (cutoff < 1) {
        throw std::invalid_argument("purified_state_vector: cutoff must be >= 1");
    }
    FourModeState st;
    st.dim = cutoff;
    st.amp.assign(static_cast<std::size_t>(cutoff) * cutoff * cutoff * cutoff, 0.0);

    const double t = std::tanh(p.s);
    const double th = std::tanh(p.r);
    const double ich = 1.0 / std::cosh(p.r);
    const double pref = std::sqrt(1.0 - t * t);

    for (int m = 0; m < cutoff; ++m) {
        const double wm = pref * pow_int(t, m);
        if (wm == 0.0 && m > 0) break;
        for (int k = 0; k <= m; ++k) {
            const int ap = m - k;  // attenuator ancilla
            const double wk =
                wm * std::exp(0.5 * log_binomial(m, k)) * std::pow(p.eta, 0.5 * k) *
                std::pow(1.0 - p.eta, 0.5 * (m - k)) * pow_int(ich, k + 1);
            if (wk == 0.0) continue;
            for (int l = 0; l < cutoff; ++l) {
                const int a = k + l;
                if (a >= cutoff) break;
                const double w = wk * std::exp(0.5 * log_binomial(k + l, k)) * pow_int(th, l);
                if (w == 0.0) break;
                st.at(a, m, ap, l) = w;
            }
        }
    }
    st.tail_norm = std::max(0.0, 1.0 - st.norm2());
    return st;
}

int purified_cutoff(const TmstParams& p, double tol) {
    validate(p);
    // Every single-mode marginal of the purification is thermal, so the
    // discarded probability mass is bounded by the sum of four geometric
    // marginal tails x^N with x = (v - 1)/(v + 1) per mode variance v.
    const double b = std::cosh(2.0 * p.s);
    const double ch2 = std::cosh(p.r) * std::cosh(p.r);
    const double sh2 = std::sinh(p.r) * std::sinh(p.r);
    const double v_mid = p.eta * b + 1.0 - p.eta;        // mode A after the attenuator
    const double variances[4] = {
        tmst_covariance(p).a,                            // A
        b,                                               // B
        (1.0 - p.eta) * b + p.eta,                       // attenuator ancilla
        sh2 * v_mid + ch2,                               // amplifier ancilla
    };
    auto tail = [&](int cut) {
        double total = 0.0;
        for (double v : variances) {
            total += std::pow((v - 1.0) / (v + 1.0), cut);
        }
        return total;
    };
    int n = 4;
    while (n < 512 && tail(n) >= tol) {
        ++n;
    }
    return n;
}

double ancilla_trace_element(const FourModeState& state, const FockIndex& idx) {
    validate(idx);
    if (idx.m1 >= state.dim || idx.m2 >= state.dim || idx.n1 >= state.dim ||
        idx.n2 >= state.dim) {
        throw std::invalid_argument("ancilla_trace_element: index beyond tensor cutoff");
    }
    double sum = 0.0;
    for (int ap = 0; ap < state.dim; ++ap) {
        for (int app = 0; app < state.dim; ++app) {
            sum += state.at(idx.m1, idx.m2, ap, app) * state.at(idx.n1, idx.n2, ap, app);
        }
    }
    return sum;
}

double dyad_composition_element(const TmstParams& p, const FockIndex& idx) {
    validate(p);
    validate(idx);
    const double t = std::tanh(p.s);
    // EPR weight on |m2><n2|, then L_eta followed by A_r on that dyad; the
    // (m1, n1) component of the result is the element.
    const double weight = (1.0 - t * t) * pow_int(t, idx.m2 + idx.n2);
    if (weight == 0.0 && idx.m2 + idx.n2 > 0) {
        return 0.0;
    }
    const DyadBlock lost = loss_map_on_dyad(idx.m2, idx.n2, p.eta);
    double out = 0.0;
    const int cutoff = std::max({idx.m1, idx.n1}) + 2;
    for (const DyadTerm& lt : lost.terms) {
        const DyadBlock amped = amplifier_map_on_dyad(lt.ket, lt.bra, p.r, cutoff);
        for (const DyadTerm& at : amped.terms) {
            if (at.ket == idx.m1 && at.bra == idx.n1) {
                out += lt.coeff * at.coeff;
            }
        }
    }
    return weight * out;
}

double TruncatedDensityMatrix::trace() const {
    double tr = 0.0;
    for (int m1 = 0; m1 < cutoff; ++m1) {
        for (int m2 = 0; m2 < cutoff; ++m2) {
            tr += (*this)(m1, m2, m1, m2);
        }
    }
    return tr;
}

double TruncatedDensityMatrix::parity_sum() const {
    double sum = 0.0;
    for (int m1 = 0; m1 < cutoff; ++m1) {
        for (int m2 = 0; m2 < cutoff; ++m2) {
            const double sign = ((m1 + m2) % 2 == 0) ? 1.0 : -1.0;
            sum += sign * (*this)(m1, m2, m1, m2);
        }
    }
    return sum;
}

TruncatedDensityMatrix truncated_tmst_density(const TmstParams& p, int cutoff) {
    validate(p);
    if (cutoff < 1) {
        throw std::invalid_argument("truncated_tmst_density: cutoff must be >= 1");
    }
    TruncatedDensityMatrix rho;
    rho.cutoff = cutoff;
    rho.elem.assign(static_cast<std::size_t>(cutoff) * cutoff * cutoff * cutoff, 0.0);
    for (int m1 = 0; m1 < cutoff; ++m1) {
        for (int m2 = 0; m2 < cutoff; ++m2) {
            for (int n1 = 0; n1 < cutoff; ++n1) {
                // Kronecker constraint fixes n2.
                const int n2 = n1 + m2 - m1;
                if (n2 < 0 || n2 >= cutoff) continue;
                const double v = tmst_fock_element(p, {m1, m2, n1, n2});
                rho.ref(m1, m2, n1, n2) = v;
            }
        }
    }
    // Marginal photon distributions are thermal: tail of B decays as
    // tanh(s)^(2N), tail of A as ((a-1)/(a+1))^N.
    const double t2 = std::tanh(p.s) * std::tanh(p.s);
    const double a = tmst_covariance(p).a;
    const double xa = (a - 1.0) / (a + 1.0);
    rho.tail_trace_bound = std::pow(t2, cutoff) + std::pow(xa, cutoff);
    return rho;
}

int default_cutoff(const TmstParams& p, double tol) {
    validate(p);
    const double t = std::tanh(p.s);
    const double t2 = t * t;
    int n = 4;
    if (t2 > 0.0) {
        while (n < 512 && std::pow(t2, n) / (1.0 - t2) >= tol) {
            ++n;
        }
    }
    return n;
}

void dump_sparse_csv(const TruncatedDensityMatrix& rho, std::ostream& os) {
    os << "m1,m2,n1,n2,value\n";
    for (int m1 = 0; m1 < rho.cutoff; ++m1) {
        for (int m2 = 0; m2 < rho.cutoff; ++m2) {
            for (int n1 = 0; n1 < rho.cutoff; ++n1) {
                for (int n2 = 0; n2 < rho.cutoff; ++n2) {
                    const double v = rho(m1, m2, n1, n2);
                    if (v != 0.0) {
                        os << m1 << ',' << m2 << ',' << n1 << ',' << n2 << ','
                           << format_double(v) << '\n';
                    }
                }
            }
        }
    }
}

std::string dump_sparse_json(const TruncatedDensityMatrix& rho) {
    std::ostringstream os;
    os << "{\"cutoff\":" << rho.cutoff
       << ",\"tail_trace_bound\":" << format_double(rho.tail_trace_bound) << ",\"elements\":[";
    bool first = true;
    for (int m1 = 0; m1 < rho.cutoff; ++m1) {
        for (int m2 = 0; m2 < rho.cutoff; ++m2) {
            for (int n1 = 0; n1 < rho.cutoff; ++n1) {
                for (int n2 = 0; n2 < rho.cutoff; ++n2) {
                    const double v = rho(m1, m2, n1, n2);
                    if (v != 0.0) {
                        if (!first) os << ',';
                        first = false;
                        os << "[" << m1 << ',' << m2 << ',' << n1 << ',' << n2 << ','
                           << format_double(v) << ']';
                    }
                }
            }
        }
    }
    os << "]}";
    return os.str();
}

}  // namespace cvsteer
