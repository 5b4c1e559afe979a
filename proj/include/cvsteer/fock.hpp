#ifndef CVSTEER_FOCK_HPP
#define CVSTEER_FOCK_HPP

#include <iosfwd>
#include <vector>

#include "cvsteer/gaussian.hpp"

namespace cvsteer {

/// Addresses one density-matrix element <m1 m2| rho |n1 n2> of a two-mode
/// state (mode A first, mode B second).
struct FockIndex {
    int m1{0};
    int m2{0};
    int n1{0};
    int n2{0};
};

/// Throws unless all four indices are >= 0.
void validate(const FockIndex& idx);

/// Closed-form Fock element of the TMST state generated by (s, eta, r).
///
/// The element vanishes unless m1 + n2 == n1 + m2; with that constraint the
/// total m1+m2+n1+n2 is even, so all odd-parity elements are zero. The value
/// is a single finite sum over k in [max(0, m2-m1), min(m2, n2)]:
///
///   (1-t^2) t^(m2+n2) * sum_k sqrt(C(m2,k) C(n2,k) C(m1,m2-k) C(n1,n2-k))
///       * eta^((m2+n2)/2 - k) (1-eta)^k
///       * tanh(r)^(2(m1-m2+k)) / cosh(r)^(2 + m2 + n2 - 2k),    t = tanh(s).
///
/// The eta- and r-powers are grouped so every exponent is nonnegative over
/// the admissible k-range; eta in {0,1} and r = 0 are exact special cases.
/// Binomial products are evaluated in log space.
double tmst_fock_element(const TmstParams& p, const FockIndex& idx);

/// One |ket><bra| component of a channel acting on a number-state dyad.
struct DyadTerm {
    int ket{0};
    int bra{0};
    double coeff{0.0};
};

/// Result of applying a single-mode channel to |m><n|.
struct DyadBlock {
    std::vector<DyadTerm> terms;
    /// Upper bound on the summed magnitude of truncated terms (0 when the
    /// expansion is finite and complete).
    double tail_bound{0.0};
};

/// Pure-loss channel on a dyad: coefficient of |m-k><n-k| is
/// eta^((m+n)/2 - k) (1-eta)^k sqrt(C(m,k) C(n,k)), k = 0..min(m,n).
DyadBlock loss_map_on_dyad(int m, int n, double eta);

/// Quantum-limited amplifier on a dyad: coefficient of |m+l><n+l| is
/// cosh(r)^-(m+n+2) sqrt(C(m+l,m) C(n+l,n)) tanh(r)^(2l). The l-sum stops
/// once the remaining geometric tail is below tail_tol, or at the hard
/// cutoff on the output index.
DyadBlock amplifier_map_on_dyad(int m, int n, double r, int cutoff, double tail_tol = 1e-14);

/// Dense amplitude tensor over four modes |A, B, A', A''>, all indices
/// < dim. Index order matches the purification layout: system modes A, B
/// followed by the attenuator and amplifier ancillas.
struct FourModeState {
    int dim{0};
    std::vector<double> amp;
    /// 1 - (stored norm^2): amplitude mass discarded by the cutoff.
    double tail_norm{0.0};

    double at(int a, int b, int ap, int app) const {
        return amp[((static_cast<std::size_t>(a) * dim + b) * dim + ap) * dim + app];
    }
    double& at(int a, int b, int ap, int app) {
        return amp[((static_cast<std::size_t>(a) * dim + b) * dim + ap) * dim + app];
    }
    double norm2() const;
};

/// Amplitudes of the purified TMST state: EPR pair on (A, B), beam splitter
/// with a vacuum ancilla A', then a two-mode squeezer with a vacuum ancilla
/// A''. Nonzero amplitudes sit at |k+l, m, m-k, l> with weight
///   sqrt(1-t^2) t^m sqrt(C(m,k) eta^k (1-eta)^(m-k))
///       * cosh(r)^-(k+1) sqrt(C(k+l,k)) tanh(r)^l.
/// Components with any index >= cutoff are dropped and accounted for in
/// tail_norm. Throws for cutoff < 1.
FourModeState purified_state_vector(const TmstParams& p, int cutoff);

/// Smallest cutoff for which the estimated discarded amplitude mass of the
/// purification is below tol.
int purified_cutoff(const TmstParams& p, double tol = 1e-12);

/// Brute-force reduced element <m1 m2| tr_{A'A''} |Psi><Psi| |n1 n2> by
/// explicit summation over both ancilla indices. Exact (no truncation
/// error) whenever all four indices are < state.dim.
double ancilla_trace_element(const FourModeState& state, const FockIndex& idx);

/// Fock element via the channel dyad maps: applies the loss and amplifier
/// maps to |m2><n2| and reads off the (m1, n1) component, weighted by the
/// EPR Schmidt coefficients.
double dyad_composition_element(const TmstParams& p, const FockIndex& idx);

/// Dense block of all elements with indices below cutoff.
struct TruncatedDensityMatrix {
    int cutoff{0};
    std::vector<double> elem;
    /// Upper bound on the trace mass outside the block (sum of the two
    /// thermal marginal tails).
    double tail_trace_bound{0.0};

    double operator()(int m1, int m2, int n1, int n2) const {
        return elem[((static_cast<std::size_t>(m1) * cutoff + m2) * cutoff + n1) * cutoff + n2];
    }
    double& ref(int m1, int m2, int n1, int n2) {
        return elem[((static_cast<std::size_t>(m1) * cutoff + m2) * cutoff + n1) * cutoff + n2];
    }
    double trace() const;
    /// sum over the diagonal of (-1)^(m1+m2) <m1 m2|rho|m1 m2>; converges to
    /// 1/sqrt(det V).
    double parity_sum() const;
};

/// Fills all elements below cutoff from the closed form and records the
/// tail-trace bound.
TruncatedDensityMatrix truncated_tmst_density(const TmstParams& p, int cutoff);

/// Default Fock cutoff: smallest N with tanh(s)^(2N) / (1 - tanh(s)^2) < tol,
/// clamped to [4, 512].
int default_cutoff(const TmstParams& p, double tol = 1e-14);

/// Sparse (m1,m2,n1,n2,value) dump of the nonzero elements, CSV with header.
void dump_sparse_csv(const TruncatedDensityMatrix& rho, std::ostream& os);

/// Same dump as a JSON document with a metadata block.
std::string dump_sparse_json(const TruncatedDensityMatrix& rho);

}  // namespace cvsteer

#endif
