#ifndef CVSTEER_MATHUTIL_HPP
#define CVSTEER_MATHUTIL_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvsteer {

/// log(n!) with a cached table for small n, lgamma beyond.
double log_factorial(int n);

/// log of the binomial coefficient C(n, k). Requires 0 <= k <= n.
double log_binomial(int n, int k);

/// Binomial C(n, k) as a double (exact for small n, via exp(log) otherwise).
double binomial(int n, int k);

/// x^n for integer n >= 0 by binary exponentiation; pow_int(x, 0) == 1 for any x.
double pow_int(double x, int n);

/// Gudermannian function, gd(z) = 2 atan(e^z) - pi/2.
double gudermannian(double z);

/// Shortest round-trip decimal representation of a double (<= 17 significant
/// digits). Used for all CSV/stdout numeric output so that identical inputs
/// produce identical bytes.
std::string format_double(double x);

}  // namespace cvsteer

#endif
