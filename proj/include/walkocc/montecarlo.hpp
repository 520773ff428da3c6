#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "walkocc/exact_engine.hpp"
#include "walkocc/walk_model.hpp"

namespace walkocc {

struct PathSample {
    std::int64_t endpoint = 0;            // S_n
    std::vector<std::int64_t> visit_counts; // one per requested level, times 1..n
};

/// Simulates one walk path. Deterministic given (seed, trial): steps are
/// drawn by inverse CDF over the support from the Philox4x32-10 stream for
/// that pair (see philox.hpp for the stream-splitting rule).
PathSample sample_path(const WalkSpec& spec, std::int64_t n, std::uint64_t seed,
                       std::uint64_t trial = 0,
                       std::span<const std::int64_t> levels = {});

/// Empirical joint law of (S_n, Lambda^a_n) with per-cell standard errors.
struct McEstimate {
    std::int64_t n = 0;
    std::int64_t a = 0;
    std::int64_t trials = 0;
    std::int64_t x_offset = 0;
    std::vector<std::uint64_t> counts; // row-major over (x - x_offset, ell), ell = 0..n

    std::int64_t x_count() const {
        return n == 0 ? 0 : static_cast<std::int64_t>(counts.size()) / (n + 1);
    }
    std::uint64_t count_at(std::int64_t x, std::int64_t ell) const;
    /// Empirical frequency; by construction the counts sum to trials, so the
    /// frequencies sum to 1 exactly (as a rational; roundoff only at output).
    double frequency(std::int64_t x, std::int64_t ell) const;
    /// sqrt(p_hat (1 - p_hat) / trials).
    double std_err(std::int64_t x, std::int64_t ell) const;
};

/// Runs `trials` independent paths and tabulates (S_n, Lambda^a_n).
/// Trials are split across `workers` threads in contiguous chunks; per-trial
/// streams make the merged histogram independent of the worker count.
McEstimate estimate_joint(const WalkSpec& spec, std::int64_t n, std::int64_t a,
                          std::int64_t trials, std::uint64_t seed, int workers = 0);

/// JointTable CSV schema plus a std_err column:
/// header `x,ell,probability,std_err`; zero cells omitted.
void write_mc_csv(std::ostream& out, const McEstimate& est);

} // namespace walkocc
