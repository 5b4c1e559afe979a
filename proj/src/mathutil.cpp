#include "cvsteer/mathutil.hpp"

#include <charconv>
#include <numbers>
#include <string>

namespace cvsteer {

namespace {

constexpr int kLogFactTableSize = 8192;

const std::vector<double>& log_fact_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(kLogFactTableSize);
        t[0] = 0.0;
        for (int n = 1; n < kLogFactTableSize; ++n) {
            t[n] = t[n - 1] + std::log(static_cast<double>(n));
        }
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("log_factorial: negative argument");
    }
    const auto& table = log_fact_table();
    if (n < kLogFactTableSize) {
        return table[n];
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double binomial(int n, int k) {
    return std::exp(log_binomial(n, k));
}

double pow_int(double x, int n) {
    if (n < 0) {
        throw std::invalid_argument("pow_int: negative exponent");
    }
    double result = 1.0;
    double base = x;
    while (n > 0) {
        if (n & 1) result *= base;
        base *= base;
        n >>= 1;
    }
    return result;
}

double gudermannian(double z) {
    return 2.0 * std::atan(std::exp(z)) - std::numbers::pi / 2.0;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) {
        return "nan";
    }
    return std::string(buf, ptr);
}

}  // namespace cvsteer
