#include "walkocc/decomposition.hpp"

#include <algorithm>
#include <string>

namespace walkocc {

namespace {

// (A * B)(n): sum over the overlap of A's support with n - B's support.
double convolution_at(const Pmf& a, const Pmf& b, std::int64_t n) {
    if (a.empty() || b.empty()) return 0.0;
    const std::int64_t lo = std::max(a.lo(), n - b.hi());
    const std::int64_t hi = std::min(a.hi(), n - b.lo());
    double s = 0.0;
    for (std::int64_t k = lo; k <= hi; ++k)
        s += a.values[static_cast<std::size_t>(k - a.offset)] *
             b.values[static_cast<std::size_t>(n - k - b.offset)];
    return s;
}

Pmf convolve_truncated(const Pmf& a, const Pmf& b, std::int64_t horizon) {
    Pmf out = convolve(a, b);
    if (out.hi() > horizon) {
        const std::int64_t keep = horizon - out.offset + 1;
        out.values.resize(static_cast<std::size_t>(std::max<std::int64_t>(keep, 0)));
        if (out.values.empty()) out.offset = 0;
    }
    out.trim();
    return out;
}

} // namespace

PathDecomposer::PathDecomposer(const WalkSpec& spec, std::int64_t horizon,
                               const EngineLimits& limits)
    : spec_(spec), n_(horizon), limits_(limits) {
    if (horizon < 1) throw DomainError("PathDecomposer: horizon must be >= 1");
    survival_ = survival_tail(spec_, n_, limits_);
}

void PathDecomposer::check_ell(std::int64_t ell) const {
    if (ell < 1)
        throw DomainError("decomposition: ell must be >= 1 (the ell = 0 slice is avoid_pmf)");
    if (ell > n_)
        throw DomainError("decomposition: ell = " + std::to_string(ell) +
                          " exceeds the horizon n = " + std::to_string(n_));
}

const Pmf& PathDecomposer::tau(std::int64_t level) {
    auto it = tau_.find(level);
    if (it == tau_.end()) {
        Pmf fp = first_passage_pmf(spec_, level, n_, limits_);
        fp.trim();
        it = tau_.emplace(level, std::move(fp)).first;
    }
    return it->second;
}

const Pmf& PathDecomposer::omega(std::int64_t u) {
    auto it = omega_.find(u);
    if (it == omega_.end()) {
        Pmf law = (u == 0) ? Pmf::delta(0) : self_convolve_power(tau(0), u, n_).pmf;
        it = omega_.emplace(u, std::move(law)).first;
    }
    return it->second;
}

const Pmf& PathDecomposer::omega_tau(std::int64_t u, std::int64_t level) {
    const auto key = std::make_pair(u, level);
    auto it = omega_tau_.find(key);
    if (it == omega_tau_.end()) {
        Pmf conv = convolve_truncated(omega(u), tau(level), n_);
        it = omega_tau_.emplace(key, std::move(conv)).first;
    }
    return it->second;
}

double PathDecomposer::joint(std::int64_t x, std::int64_t a, std::int64_t ell) {
    check_ell(ell);
    if (a == 0) {
        if (x == 0) return omega(ell).at(n_);
        return convolution_at(omega(ell), tau(x), n_);
    }
    if (x == a) return convolution_at(tau(a), omega(ell - 1), n_);
    return convolution_at(tau(a), omega_tau(ell - 1, x - a), n_);
}

double PathDecomposer::occupation(std::int64_t a, std::int64_t ell) {
    check_ell(ell);
    const Pmf& lead = (a == 0) ? omega(ell) : omega_tau(ell - 1, a);
    // sum_j lead(j) P[tau_0 > n - j]
    double s = 0.0;
    const std::int64_t lo = std::max<std::int64_t>(lead.lo(), 0);
    const std::int64_t hi = std::min(lead.hi(), n_);
    for (std::int64_t j = lo; j <= hi; ++j)
        s += lead.values[static_cast<std::size_t>(j - lead.offset)] *
             survival_[static_cast<std::size_t>(n_ - j)];
    return s;
}

double joint_via_decomposition(const WalkSpec& spec, std::int64_t n, std::int64_t x,
                               std::int64_t a, std::int64_t ell, const EngineLimits& limits) {
    PathDecomposer dec(spec, n, limits);
    return dec.joint(x, a, ell);
}

double occupation_via_decomposition(const WalkSpec& spec, std::int64_t n, std::int64_t a,
                                    std::int64_t ell, const EngineLimits& limits) {
    PathDecomposer dec(spec, n, limits);
    return dec.occupation(a, ell);
}

} // namespace walkocc
