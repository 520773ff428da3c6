#include "walkocc/convolve.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace walkocc {

namespace {

constexpr std::int64_t kDirectThreshold = 256;
constexpr double kClampTol = 1e-12;

// Iterative radix-2 Cooley-Tukey, in place. n must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= inv;
    }
}

double clamp_roundoff(double v) {
    if (v >= 0.0) return v;
    if (v > -kClampTol) return 0.0;
    throw NumericalError("convolution produced " + std::to_string(v) +
                         ", below the -1e-12 roundoff floor");
}

void check_output_len(std::int64_t len, const ConvolveLimits& limits) {
    if (len > limits.max_output_len)
        throw ResourceError("convolution output length " + std::to_string(len) +
                            " exceeds cap " + std::to_string(limits.max_output_len));
}

// Truncate to absolute index <= horizon and drop leading zeros.
Pmf truncate_to(Pmf p, std::int64_t horizon) {
    if (p.hi() > horizon) {
        const std::int64_t keep = horizon - p.offset + 1;
        if (keep <= 0) {
            p.values.clear();
            p.offset = 0;
            return p;
        }
        p.values.resize(static_cast<std::size_t>(keep));
    }
    p.trim();
    return p;
}

} // namespace

namespace detail {

Pmf convolve_direct(const Pmf& p, const Pmf& q) {
    Pmf out;
    out.offset = p.offset + q.offset;
    out.values.assign(p.values.size() + q.values.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.values.size(); ++i) {
        const double pi = p.values[i];
        if (pi == 0.0) continue;
        for (std::size_t j = 0; j < q.values.size(); ++j)
            out.values[i + j] += pi * q.values[j];
    }
    return out;
}

Pmf convolve_fft(const Pmf& p, const Pmf& q) {
    const std::size_t out_len = p.values.size() + q.values.size() - 1;
    std::size_t m = 1;
    while (m < out_len) m <<= 1;
    std::vector<std::complex<double>> fa(m), fb(m);
    for (std::size_t i = 0; i < p.values.size(); ++i) fa[i] = p.values[i];
    for (std::size_t i = 0; i < q.values.size(); ++i) fb[i] = q.values[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    Pmf out;
    out.offset = p.offset + q.offset;
    out.values.resize(out_len);
    for (std::size_t i = 0; i < out_len; ++i) out.values[i] = clamp_roundoff(fa[i].real());
    return out;
}

} // namespace detail

Pmf convolve(const Pmf& p, const Pmf& q, const ConvolveLimits& limits) {
    if (p.empty() || q.empty()) return Pmf();
    const std::int64_t out_len =
        static_cast<std::int64_t>(p.values.size() + q.values.size()) - 1;
    check_output_len(out_len, limits);
    if (out_len <= kDirectThreshold) return detail::convolve_direct(p, q);
    return detail::convolve_fft(p, q);
}

OmegaLaw self_convolve_power(const Pmf& p, std::int64_t u, std::int64_t horizon,
                             const ConvolveLimits& limits) {
    if (u < 1) throw DomainError("self_convolve_power: u must be >= 1");
    for (std::int64_t i = p.lo(); i < 1 && i <= p.hi(); ++i) {
        if (p.at(i) != 0.0)
            throw DomainError("self_convolve_power: mass at index " + std::to_string(i) +
                              " < 1");
    }

    Pmf base = truncate_to(p, horizon);
    Pmf result;
    bool have_result = false;
    std::int64_t e = u;
    while (e > 0) {
        if (e & 1) {
            result = have_result ? truncate_to(convolve(result, base, limits), horizon)
                                 : base;
            have_result = true;
        }
        e >>= 1;
        if (e > 0) base = truncate_to(convolve(base, base, limits), horizon);
    }

    OmegaLaw law;
    law.u = u;
    law.horizon = horizon;
    law.pmf = std::move(result);
    return law;
}

} // namespace walkocc
