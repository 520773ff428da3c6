#pragma once

#include <cstdint>

#include "walkocc/errors.hpp"
#include "walkocc/pmf.hpp"

namespace walkocc {

/// Length caps for convolution outputs.
struct ConvolveLimits {
    std::int64_t max_output_len = std::int64_t(1) << 24;
};

/// Exact convolution of two mass functions; offset adds.
///
/// Uses the direct O(|p||q|) sum when the output is short (<= 256 entries)
/// and a radix-2 FFT otherwise. FFT outputs in (-1e-12, 0) are clamped to 0;
/// anything <= -1e-12 indicates a bug and raises NumericalError.
Pmf convolve(const Pmf& p, const Pmf& q, const ConvolveLimits& limits = {});

/// Law of Omega_u = omega_1 + ... + omega_u for i.i.d. summands with law p,
/// truncated to support <= horizon.
struct OmegaLaw {
    std::int64_t u = 0;
    std::int64_t horizon = 0;
    Pmf pmf; // P[Omega_u = m] for m in [u, horizon] (sub-probability)
};

/// Computes OmegaLaw by binary exponentiation, truncating to [u', horizon]
/// after every multiply. Truncation only discards mass that can never fall
/// back below the horizon (supports only grow), so retained entries are exact
/// up to roundoff.
///
/// p must be a (sub-)probability law supported on {1, 2, ...}; mass at
/// indices < 1 raises DomainError. u must be >= 1.
OmegaLaw self_convolve_power(const Pmf& p, std::int64_t u, std::int64_t horizon,
                             const ConvolveLimits& limits = {});

namespace detail {
/// Direct convolution, exposed for the FFT-vs-direct oracle tests.
Pmf convolve_direct(const Pmf& p, const Pmf& q);
Pmf convolve_fft(const Pmf& p, const Pmf& q);
} // namespace detail

} // namespace walkocc
