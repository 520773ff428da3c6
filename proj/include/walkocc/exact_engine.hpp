#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "walkocc/errors.hpp"
#include "walkocc/pmf.hpp"
#include "walkocc/walk_model.hpp"

namespace walkocc {

/// Caps for the exact DP engines. DP position vectors span exactly
/// [-n*max_step, n*max_step]; nothing is truncated, so all identities hold up
/// to floating-point roundoff. The caps only bound memory.
struct EngineLimits {
    std::int64_t max_vector_len = std::int64_t(1) << 24;
    /// joint_pmf / occupation_pmf are brute-force oracles; horizon cap.
    std::int64_t oracle_cap = 64;
};

/// Exact law of S_n (walk started at 0).
Pmf marginal_pmf(const WalkSpec& spec, std::int64_t n, const EngineLimits& limits = {});

/// First-passage law: values[k] = P[tau_a = k] for k = 1..N (index 0 is 0).
/// For a = 0 this is the first-return law. Sub-probability.
Pmf first_passage_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t N,
                      const EngineLimits& limits = {});

/// (P[tau_0 > n])_{n=0..N}; entry 0 equals 1.
std::vector<double> survival_tail(const WalkSpec& spec, std::int64_t N,
                                  const EngineLimits& limits = {});

/// Law of the walk killed on hitting level a at times 1..n:
/// x -> P[S_n = x, Lambda^a_n = 0]. The entry at x = a is exactly 0.
Pmf avoid_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
              const EngineLimits& limits = {});

/// Exact joint table P[S_n = x, Lambda^a_n = ell]. Visits are counted at
/// times 1..n only; time 0 never counts, even when a = 0.
struct JointTable {
    std::int64_t n = 0;
    std::int64_t a = 0;
    std::int64_t x_offset = 0;
    std::vector<double> entries; // row-major over (x - x_offset, ell), ell = 0..n

    std::int64_t x_count() const {
        return n == 0 ? 0 : static_cast<std::int64_t>(entries.size()) / (n + 1);
    }
    double at(std::int64_t x, std::int64_t ell) const {
        const std::int64_t xi = x - x_offset;
        if (xi < 0 || xi >= x_count() || ell < 0 || ell > n) return 0.0;
        return entries[static_cast<std::size_t>(xi * (n + 1) + ell)];
    }
    double total_mass() const {
        double s = 0.0;
        for (double v : entries) s += v;
        return s;
    }
};

/// Brute-force DP over (position, visit count) states. This is the oracle the
/// path-decomposition identities are verified against; horizon is capped by
/// limits.oracle_cap (raise it explicitly for larger cross-checks).
JointTable joint_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
                     const EngineLimits& limits = {});

/// ell -> P[Lambda^a_n = ell], the x-marginal of joint_pmf. Same oracle cap.
Pmf occupation_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
                   const EngineLimits& limits = {});

/// CSV with header `index,probability`, absolute indices, 17 significant digits.
void write_pmf_csv(std::ostream& out, const Pmf& pmf);

/// CSV with header `x,ell,probability`; zero entries omitted.
void write_joint_csv(std::ostream& out, const JointTable& table);

} // namespace walkocc
