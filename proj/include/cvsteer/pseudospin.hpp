#ifndef CVSTEER_PSEUDOSPIN_HPP
#define CVSTEER_PSEUDOSPIN_HPP

#include "cvsteer/gaussian.hpp"

namespace cvsteer {

/// Diagonal pseudospin correlators <s^x s^x>, <s^y s^y>, <s^z s^z>.
struct CorrelatorTriple {
    double xx{0.0};
    double yy{0.0};
    double zz{0.0};
};

/// Moment-criterion value xx^2 + yy^2 + zz^2; steering is certified by a
/// strict value > 1.
struct MomentValue {
    double value{0.0};
    bool steerable{false};
};

/// Type-i correlators of a TMST state plus truncation diagnostics.
struct TypeICorrelators {
    CorrelatorTriple correlators;
    /// Upper bound on the truncation error of xx (and so of |yy|).
    double tail_bound{0.0};
    int n_terms{0};
    int max_l_terms{0};
    bool converged{true};
};

/// Number-parity pseudospin correlators of the TMST state (s, eta, r).
///
/// xx is a double series over the EPR pair index n and the amplifier index
/// l; yy = -xx identically and zz = 1/sqrt(det V). Both sums iterate to
/// tolerance: the n-sum stops once the remaining Bob-marginal mass bound
/// 2 tanh(s)^(4(n+1)) drops below tol, the l-sum once its geometric tail
/// bound does. The reported tail_bound adds both contributions.
TypeICorrelators type_i_correlators(const TmstParams& p, double tol = 1e-10);

/// Position-parity pseudospin correlators of an arbitrary two-mode Gaussian
/// standard form:
///   xx = (2/pi) atan sqrt(c^2/(ab - c^2)),
///   yy = (2/pi) (det V)^-1/2 atan sqrt(d^2/(ab - d^2)),
///   zz = (det V)^-1/2.
/// Throws for non-physical input.
CorrelatorTriple type_ii_correlators(const StandardForm& sf, double tol = kBonaFideTol);

MomentValue moment_value(const CorrelatorTriple& c);

/// Worst-case shift of the moment value when xx and yy each carry an error
/// of at most xx_bound.
double moment_error_bound(const CorrelatorTriple& c, double xx_bound);

/// Search configuration for the type-ii no-go maximization.
struct NogoOptions {
    int grid_points{15};
    double max_diag{3.0};     // a, b range over [1, max_diag]
    double max_offdiag{2.0};  // c, d range over [-max_offdiag, max_offdiag]
    bool refine{true};
    double refine_step_min{1e-5};
};

struct NogoResult {
    double max_value{0.0};
    StandardForm argmax;
    std::size_t feasible_points{0};
};

/// Maximum of the type-ii moment value over standard forms that are both
/// physical and Gaussian-unsteerable (det alpha <= det V). Grid scan
/// followed by a compass-search refinement. Throws for a degenerate grid.
NogoResult type_ii_nogo_scan(const NogoOptions& opts = {});

}  // namespace cvsteer

#endif
