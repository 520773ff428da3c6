#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "walkocc/convolve.hpp"
#include "walkocc/exact_engine.hpp"
#include "walkocc/walk_model.hpp"

namespace walkocc {

/// Evaluates P[S_n = x, Lambda^a_n = ell] and P[Lambda^a_n = ell] for ell >= 1
/// by decomposing the path at its visits to level a: a first-hitting segment
/// (law tau_a, vacuous when a = 0), ell - 1 excursions glued from i.i.d.
/// copies of the first return time (law Omega_{ell-1}), and a final segment
/// that avoids a (law tau_{x-a} by time reversal, or the survival tail for
/// the occupation marginal). Everything reduces to convolutions of
/// first-passage laws, so the cost per level is O(n log n) instead of the
/// O(n^2 (n+1)) brute-force joint table.
///
/// The ell = 0 slice is avoid_pmf's job and is rejected here (DomainError).
///
/// A decomposer is bound to one walk and one horizon and memoizes
/// first-passage laws, Omega powers and partial convolutions across queries;
/// it is cheap to sweep x, a, ell at fixed n. Not thread-safe: use one
/// instance per thread.
class PathDecomposer {
public:
    PathDecomposer(const WalkSpec& spec, std::int64_t horizon,
                   const EngineLimits& limits = {});

    std::int64_t horizon() const { return n_; }

    /// P[S_n = x, Lambda^a_n = ell] for the bound horizon n.
    double joint(std::int64_t x, std::int64_t a, std::int64_t ell);

    /// P[Lambda^a_n = ell] for the bound horizon n.
    double occupation(std::int64_t a, std::int64_t ell);

private:
    const Pmf& tau(std::int64_t level);
    const Pmf& omega(std::int64_t u);                         // u >= 0; Omega_0 = delta_0
    const Pmf& omega_tau(std::int64_t u, std::int64_t level); // Omega_u * tau_level, trunc n

    void check_ell(std::int64_t ell) const;

    WalkSpec spec_;
    std::int64_t n_;
    EngineLimits limits_;
    std::vector<double> survival_; // P[tau_0 > j], j = 0..n
    std::map<std::int64_t, Pmf> tau_;
    std::map<std::int64_t, Pmf> omega_;
    std::map<std::pair<std::int64_t, std::int64_t>, Pmf> omega_tau_;
};

/// One-shot forms of the decomposition (build a transient cache).
double joint_via_decomposition(const WalkSpec& spec, std::int64_t n, std::int64_t x,
                               std::int64_t a, std::int64_t ell,
                               const EngineLimits& limits = {});
double occupation_via_decomposition(const WalkSpec& spec, std::int64_t n, std::int64_t a,
                                    std::int64_t ell, const EngineLimits& limits = {});

} // namespace walkocc
