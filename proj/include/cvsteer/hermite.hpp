#ifndef CVSTEER_HERMITE_HPP
#define CVSTEER_HERMITE_HPP

#include <array>
#include <map>

#include "cvsteer/fock.hpp"
#include "cvsteer/gaussian.hpp"

namespace cvsteer {

/// Order indices of a four-dimensional Hermite polynomial; same layout as a
/// Fock element address.
using HermiteIndex = FockIndex;

/// Parameters (e, f, g) of the coupling matrix that defines the Hermite
/// family matched to a TMST standard form (a, b, c) with d = -c:
///   e = 2c / K,   f = ((a-1)(b+1) - c^2) / K,   g = ((a+1)(b-1) - c^2) / K,
/// with K = (a+1)(b+1) - c^2.
struct ThetaParams {
    double e{0.0};
    double f{0.0};
    double g{0.0};
};

/// Builds ThetaParams from standard-form (a, b, c). Throws when the shared
/// denominator K is (numerically) zero.
ThetaParams theta_from_standard_form(double a, double b, double c);

/// Four-dimensional Hermite polynomial at the origin, as the single finite
/// sum
///   sqrt(m1! m2! n1! n2!) [m1+n2 = n1+m2]
///     sum_k sqrt(C(m2,k) C(n2,k) C(m1,m2-k) C(n1,n2-k))
///           e^(m2+n2-2k) f^(m1-m2+k) g^k,
/// k in [max(0, m2-m1), min(m2, n2)]. The powers are grouped so that all
/// exponents are nonnegative over the k-range; e = 0 or f = 0 are exact
/// cases.
double hermite_at_origin(const HermiteIndex& idx, const ThetaParams& th);

/// Hermite polynomial at the origin from the generating-function
/// definition: expands exp(e x1 x2 + f x1 x3 + g x2 x4 + e x3 x4) as a
/// truncated multivariate polynomial and reads the target coefficient,
/// scaled by (-1)^total * m1! m2! n1! n2!. Total degree must be <= 12.
double hermite_taylor_oracle(const HermiteIndex& idx, const ThetaParams& th);

/// Expansion table shared by many index lookups against one Theta; the
/// single-shot oracle above is equivalent to building a fresh table per
/// call.
class HermiteTaylorTable {
  public:
    HermiteTaylorTable(const ThetaParams& th, int max_degree);
    /// Same contract as hermite_taylor_oracle, bounded by max_degree.
    double value(const HermiteIndex& idx) const;

  private:
    std::map<std::array<int, 4>, double> coeffs_;
    int max_degree_;
};

/// Fock element of the TMST state with the given standard form (d = -c),
/// computed through the Hermite correspondence:
///   4 H(0) / (sqrt(det(V + 1)) sqrt(m1! m2! n1! n2!)).
double fock_from_hermite(const StandardForm& sf, const FockIndex& idx);

/// Generative parameters (s, eta, r) reproducing a TMST standard form:
/// s from b = cosh 2s, then cosh^2 r = K / (2(b+1)) and
/// eta = c^2 / ((b^2-1) cosh^2 r). Throws when the form is outside the
/// reachable family (a below the floor for the given b, c, or eta > 1).
TmstParams tmst_params_from_standard_form(const StandardForm& sf);

/// | (1 - tanh^2 s)/cosh^2 r  -  4/sqrt(det(V+1)) | for the covariance
/// generated by p; an identity of the parametrization, so the residual is
/// expected at rounding level.
double det_relation_residual(const TmstParams& p);

}  // namespace cvsteer

#endif
