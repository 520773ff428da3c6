#include "walkocc/special_functions.hpp"

#include <cmath>
#include <numbers>

namespace walkocc {

namespace {

constexpr double kSeriesCutoff = 3.0;

// erf on [0, kSeriesCutoff] by the positive-term scaled series.
double erf_series(double x) {
    const double x2 = x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 200; ++k) {
        term *= 2.0 * x2 / static_cast<double>(2 * k + 1);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * x * std::exp(-x2) * sum;
}

// erfc on (kSeriesCutoff, inf) by the Legendre continued fraction
//   erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x;
    double C = f;
    double D = 0.0;
    for (int k = 1; k <= 300; ++k) {
        const double an = 0.5 * static_cast<double>(k);
        D = x + an * D;
        if (D == 0.0) D = tiny;
        C = x + an / C;
        if (C == 0.0) C = tiny;
        D = 1.0 / D;
        const double delta = C * D;
        f *= delta;
        if (std::fabs(delta - 1.0) < 1e-17) break;
    }
    return std::exp(-x * x) / std::sqrt(std::numbers::pi) / f;
}

} // namespace

double erf(double x) {
    if (x < 0.0) return -erf(-x);
    if (x <= kSeriesCutoff) return erf_series(x);
    return 1.0 - erfc_cf(x);
}

double erfc(double x) {
    if (x > kSeriesCutoff) return erfc_cf(x);
    return 1.0 - erf(x);
}

} // namespace walkocc
