#ifndef CVSTEER_ORACLES_HPP
#define CVSTEER_ORACLES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "cvsteer/fock.hpp"
#include "cvsteer/gaussian.hpp"
#include "cvsteer/pseudospin.hpp"

namespace cvsteer {

/// Independent verification routes. Everything here recomputes quantities
/// the library produces in closed form, by a different numerical path
/// (explicit operator algebra, partial traces, or quadrature), and is used
/// by the self-check command and the test suites.

/// Pseudospin correlators of a truncated Fock density by explicit
/// contraction with the number-parity spin matrices.
CorrelatorTriple pseudospin_expectation_fock(const TruncatedDensityMatrix& rho);

/// E[sgn(qA) sgn(qB)] of the position marginal by 2D Gauss-Legendre
/// quadrature of the quadrant mass. Matches the closed-form xx correlator
/// of the position-parity pseudospin to quadrature accuracy (~1e-8).
double quadrant_sign_correlation(const StandardForm& sf, int points = 160);

/// Integral of the Wigner function by tensor Gauss-Legendre quadrature in
/// whitened coordinates (box half-width in units of the whitened standard
/// deviation); approaches 1 for physical states.
double wigner_norm_quadrature(const StandardForm& sf, int points = 20, double half_width = -1.0);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// One named deviation aggregated over a batch of comparisons.
struct Deviation {
    std::string what;
    double max_abs{0.0};
    double tol{0.0};
    long cases{0};
    bool pass() const { return max_abs < tol; }
};

struct VerifyReport {
    std::vector<Deviation> checks;
    bool pass() const {
        for (const auto& c : checks) {
            if (!c.pass()) return false;
        }
        return true;
    }
};

/// Closed-form Fock elements against the ancilla-trace of the purified
/// state and against the dyad-map composition, over random parameter
/// triples (s <= 1, eta in [0.05, 1], r <= 0.8) and all index quadruples
/// with max index <= max_index. Also asserts the parity and index-balance
/// selection rules produce exact zeros.
VerifyReport verify_fock(int cases, int max_index = 5, double tol = 1e-10,
                         std::uint64_t seed = 20220901);

/// Hermite closed form against the generating-function expansion (relative,
/// all total degrees <= max_degree), the Fock correspondence on matched
/// parameters, and the determinant identity of the parametrization.
VerifyReport verify_hermite(int theta_samples = 20, int max_degree = 8, double rel_tol = 1e-10,
                            std::uint64_t seed = 20221001);

/// Type-i correlator series against the Fock-side operator expectation, the
/// exact antisymmetry of yy, and the parity-sum route to zz.
VerifyReport verify_correlators(int cases = 20, double tol = 1e-8,
                                std::uint64_t seed = 20221101);

/// Formats a report as one line per check plus a verdict.
std::string format_report(const VerifyReport& report, const std::string& title);

}  // namespace cvsteer

#endif
