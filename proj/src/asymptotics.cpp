#include "walkocc/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "walkocc/quadrature.hpp"

namespace walkocc {

namespace {

constexpr double kLogTiny = 690.0; // exp(-690) ~ 1e-300

void require_positive_variance(double nu) {
    if (!(nu > 0.0)) throw DomainError("variance nu must be > 0");
}

// heat(z, w) = e^{-z^2/2w} / sqrt(2 pi w)
double heat_kernel(double z, double w) {
    if (w <= 0.0) return 0.0;
    const double e = z * z / (2.0 * w);
    if (e > kLogTiny) return 0.0;
    return std::exp(-e) / std::sqrt(2.0 * std::numbers::pi * w);
}

} // namespace

double levy_hitting_density(double y, double u) {
    if (u <= 0.0) return 0.0;
    const double e = y * y / (2.0 * u);
    if (e > kLogTiny) return 0.0;
    return y * std::exp(-e) / std::sqrt(2.0 * std::numbers::pi * u * u * u);
}

double phi(double nu, double a, double x, double ell) {
    require_positive_variance(nu);
    if (!(ell > 0.0)) throw DomainError("phi: ell must be > 0");
    const double s = std::fabs(a) + std::fabs(x - a) + nu * ell;
    return s * std::exp(-s * s / (2.0 * nu)) / std::sqrt(2.0 * std::numbers::pi * nu);
}

double psi(double nu, double a, double ell) {
    require_positive_variance(nu);
    if (!(ell > 0.0)) throw DomainError("psi: ell must be > 0");
    const double s = std::fabs(a) + nu * ell;
    return 2.0 * nu * std::exp(-s * s / (2.0 * nu)) / std::sqrt(2.0 * std::numbers::pi * nu);
}

double gaussian_density(double nu, double x) {
    require_positive_variance(nu);
    return heat_kernel(x, nu);
}

double rayleigh_two_sided(double nu, double x) {
    require_positive_variance(nu);
    return std::fabs(x) * std::exp(-x * x / (2.0 * nu)) / (2.0 * nu);
}

double kaigh_hitting_density(double nu, double n, double a) {
    require_positive_variance(nu);
    if (!(n > 0.0)) throw DomainError("kaigh_hitting_density: n must be > 0");
    return std::fabs(a) * std::exp(-a * a / (2.0 * nu * n)) /
           std::sqrt(2.0 * std::numbers::pi * nu * n);
}

double uchiyama_avoid(double nu, double n, double x, double a) {
    require_positive_variance(nu);
    if (!(n > 0.0)) throw DomainError("uchiyama_avoid: n must be > 0");
    const bool upper = a >= 0.0 && x <= a;
    const bool lower = a <= 0.0 && x >= a;
    if (!upper && !lower)
        throw DomainError("uchiyama_avoid: requires (a >= 0, x <= a) or (a <= 0, x >= a)");
    const double rn = std::sqrt(n);
    return gaussian_density(nu, x / rn) - gaussian_density(nu, (2.0 * a - x) / rn);
}

double stable_omega_density(double nu, double n, double ell, double m) {
    require_positive_variance(nu);
    if (!(n > 0.0 && ell > 0.0 && m > 0.0))
        throw DomainError("stable_omega_density: n, ell, m must be > 0");
    const double r = m / n;
    const double s = nu * ell;
    const double e = s * s / (2.0 * nu * n * r);
    if (e > kLogTiny) return 0.0;
    return s * std::exp(-e) / std::sqrt(2.0 * std::numbers::pi * nu * n * r * r * r);
}

double survival_limit(double nu) {
    require_positive_variance(nu);
    return std::sqrt(2.0 * nu / std::numbers::pi);
}

double avoid_prob_limit(double nu, double n, double a) {
    require_positive_variance(nu);
    if (!(n > 0.0)) throw DomainError("avoid_prob_limit: n must be > 0");
    return erf(std::fabs(a) / std::sqrt(2.0 * nu * n));
}

double kaigh_tail(double nu, double z) {
    require_positive_variance(nu);
    if (!(z > 0.0)) throw DomainError("kaigh_tail: z must be > 0");
    return erfc(1.0 / std::sqrt(2.0 * nu * z));
}

IdentityCheck integral_identity_check(int which, double y, double z, double t) {
    if (which != 1 && which != 2)
        throw DomainError("integral_identity_check: which must be 1 or 2");
    if (!(y > 0.0) || !(t > 0.0))
        throw DomainError("integral_identity_check: y and t must be > 0");
    if (which == 1 && !(z > 0.0))
        throw DomainError("integral_identity_check: identity 1 needs z > 0");
    if (z < 0.0) throw DomainError("integral_identity_check: z must be >= 0");

    const double sqrt2pi = std::sqrt(2.0 * std::numbers::pi);
    IdentityCheck out;

    // int_0^{t/2} levy(y1, u) g(t - u) du with v = 1/u. The transformed
    // integrand is y1 e^{-y1^2 v / 2} / sqrt(2 pi v) * g(t - 1/v), smooth and
    // exponentially decaying; integration stops where the exponential
    // underflows (1e-300). g receives the remaining time t - u.
    const auto left_piece = [&](double y1, const std::function<double(double)>& g) {
        const double v_lo = 2.0 / t;
        const double v_hi = 2.0 * kLogTiny / (y1 * y1);
        if (v_hi <= v_lo) return 0.0;
        return integrate(
            [&](double v) {
                return y1 * std::exp(-y1 * y1 * v / 2.0) / (sqrt2pi * std::sqrt(v)) *
                       g(t - 1.0 / v);
            },
            v_lo, v_hi);
    };

    if (which == 1) {
        // Split at t/2 and mirror: both endpoint singularities become the
        // same transformed left piece with the roles of y and z swapped.
        out.lhs = left_piece(y, [&](double w) { return levy_hitting_density(z, w); }) +
                  left_piece(z, [&](double w) { return levy_hitting_density(y, w); });
        const double s = y + z;
        out.rhs = s * std::exp(-s * s / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t * t * t);
        return out;
    }

    // Identity 2: left piece as above; near u = t substitute w = sqrt(t-u),
    // du = -2w dw, which removes the 1/sqrt(t-u) factor entirely (the z = 0
    // case would otherwise stall the bisection on the endpoint).
    const double left = left_piece(y, [&](double w) { return heat_kernel(z, w); });
    const double right = integrate(
        [&](double w) {
            const double e = (w > 0.0) ? z * z / (2.0 * w * w) : kLogTiny + 1.0;
            const double gz = (e > kLogTiny) ? 0.0 : std::exp(-e);
            return 2.0 * levy_hitting_density(y, t - w * w) * gz / sqrt2pi;
        },
        0.0, std::sqrt(t / 2.0));
    out.lhs = left + right;
    out.rhs = std::exp(-(y + z) * (y + z) / (2.0 * t)) / std::sqrt(2.0 * std::numbers::pi * t);
    return out;
}

} // namespace walkocc
