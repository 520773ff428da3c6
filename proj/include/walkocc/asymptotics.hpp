#pragma once

#include <cmath>
#include <cstdint>
#include <span>

#include "walkocc/errors.hpp"
#include "walkocc/special_functions.hpp"

namespace walkocc {

/// Joint limiting density of (endpoint, occupation) in scaled coordinates:
///
///   phi(nu; a, x, ell) = (|a| + |x-a| + nu ell) e^{-(|a|+|x-a|+nu ell)^2 / 2 nu}
///                        / sqrt(2 pi nu)
///
/// with a the level, x the endpoint and ell > 0 the occupation coordinate.
/// This is the density of (B^nu_1, local time at a) for a Brownian motion of
/// variance nu, and the n -> infinity limit of n P[S_n = x sqrt(n),
/// Lambda^{a sqrt(n)}_n = ell sqrt(n)]. DomainError for ell <= 0.
double phi(double nu, double a, double x, double ell);

/// Occupation marginal: psi(nu; a, ell) = 2 nu e^{-(|a|+nu ell)^2/2 nu} / sqrt(2 pi nu).
/// Equals the x-integral of phi. DomainError for ell <= 0.
double psi(double nu, double a, double ell);

/// Gaussian density with variance nu.
double gaussian_density(double nu, double x);

/// Endpoint density of the walk conditioned to avoid the origin:
/// |x| e^{-x^2/2 nu} / (2 nu)  (two-sided Rayleigh).
double rayleigh_two_sided(double nu, double x);

/// Limit of n P[S_n = a, tau_0 > n]:  |a| e^{-a^2/2 nu n} / sqrt(2 pi nu n).
double kaigh_hitting_density(double nu, double n, double a);

/// Limit of sqrt(n) P[S_n = x, Lambda^a_n = 0] by reflection:
/// gaussian_density(nu, x/sqrt(n)) - gaussian_density(nu, (2a-x)/sqrt(n)).
/// Valid on the half-planes (a >= 0 and x <= a) or (a <= 0 and x >= a);
/// DomainError outside them.
double uchiyama_avoid(double nu, double n, double x, double a);

/// Limit of n P[Omega_{ell-1} = m] (sum of ell-1 first-return times):
/// (nu ell) e^{-(nu ell)^2 / (2 nu n (m/n))} / sqrt(2 pi nu n (m/n)^3).
double stable_omega_density(double nu, double n, double ell, double m);

/// Limit of sqrt(n) P[tau_0 > n]:  sqrt(2 nu / pi).
double survival_limit(double nu);

/// Limit of P[Lambda^a_n = 0]:  erf(|a| / sqrt(2 nu n)).
double avoid_prob_limit(double nu, double n, double a);

/// Limit of P[tau_n <= n^2 z]:  erfc(1 / sqrt(2 nu z)).
double kaigh_tail(double nu, double z);

/// Quadrature vs closed form for the two hitting-density integral identities:
///   which = 1:  int_0^t levy(y,u) levy(z,t-u) du = (y+z) e^{-(y+z)^2/2t} / sqrt(2 pi t^3)
///   which = 2:  int_0^t levy(y,u) heat(z,t-u) du = e^{-(y+z)^2/2t} / sqrt(2 pi t)
/// where levy(y,u) = y e^{-y^2/2u} / sqrt(2 pi u^3) and
/// heat(z,w) = e^{-z^2/2w} / sqrt(2 pi w). The lhs is computed by adaptive
/// quadrature after substituting away the endpoint singularities
/// (v = 1/u on the left, and w = sqrt(t-u) for identity 2 on the right).
/// Requires y, t > 0; z > 0 for identity 1, z >= 0 for identity 2.
struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
};
IdentityCheck integral_identity_check(int which, double y, double z, double t);

/// First-hitting density of level y > 0 by a standard Brownian motion.
double levy_hitting_density(double y, double u);

/// (1/n) sum_{k = floor(n c1)}^{floor(n alpha) - 1} f(k/n, y): the Riemann sum
/// whose uniform convergence to int_{c1}^{alpha} f(u, y) du underpins the
/// convergence studies. Requires c1 < alpha, n >= 2.
template <class F>
double riemann_sum(F&& f, double c1, double alpha, std::int64_t n,
                   std::span<const double> y) {
    const auto k0 = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * c1));
    const auto k1 = static_cast<std::int64_t>(std::floor(static_cast<double>(n) * alpha));
    double s = 0.0;
    for (std::int64_t k = k0; k < k1; ++k)
        s += f(static_cast<double>(k) / static_cast<double>(n), y);
    return s / static_cast<double>(n);
}

} // namespace walkocc
