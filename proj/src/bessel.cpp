#include "skg/bessel.hpp"

#include <cmath>

namespace skg {

namespace {

double j0_series(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 80; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) {
            break;
        }
    }
    return sum;
}

// Hankel expansion J0(x) = sqrt(2/(pi x)) [P(x) cos(x - pi/4) - Q(x) sin(x - pi/4)]
// with P = a0 - a2/x^2 + a4/x^4 - ...,  Q = -a1/x + a3/x^3 - a5/x^5 + ...,
// a_{k+1} = a_k (2k+1)^2 / (8(k+1)). Truncating at the smallest term bounds
// the error; at x >= 12 that is below 1e-13.
double j0_asymptotic(double x) {
    double p = 0.0;
    double q = 0.0;
    double a = 1.0;
    double xk = 1.0;
    double prev = HUGE_VAL;
    for (int k = 0; k <= 20; ++k) {
        const double term = a / xk;
        if (std::abs(term) > std::abs(prev)) {
            break;  // asymptotic series started diverging
        }
        const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
        if (k % 2 == 0) {
            p += sign * term;
        } else {
            q -= sign * term;
        }
        prev = term;
        a *= (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0));
        xk *= x;
    }
    const double chi = x - M_PI / 4.0;
    return std::sqrt(2.0 / (M_PI * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    if (ax < 12.0) {
        return j0_series(ax);
    }
    return j0_asymptotic(ax);
}

}  // namespace skg
