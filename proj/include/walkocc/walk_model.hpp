#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "walkocc/errors.hpp"

namespace walkocc {

/// Step law of the increment X: probs[i] = P[X = min_step + i].
struct StepDistribution {
    std::int64_t min_step = 0;
    std::vector<double> probs;

    std::int64_t max_step_value() const {
        return min_step + static_cast<std::int64_t>(probs.size()) - 1;
    }
};

/// A validated mean-zero, unit-lattice, aperiodic step law with finite support.
///
/// Immutable after construction; safe to share across threads. Instances are
/// only produced by validate_step_distribution / load_walk_file, so every
/// WalkSpec in circulation satisfies:
///   - probabilities >= 0, total mass 1 within 1e-12, >= 2 support points
///   - |mean| <= 1e-12 and variance > 0
///   - gcd of support-point differences is 1 (no proper sublattice)
///   - return times to 0 within the probe horizon have gcd 1 (aperiodicity)
///
/// Recurrence of the walk is automatic for mean-zero finite-variance integer
/// walks (Chung-Fuchs) and is not a separate check.
class WalkSpec {
public:
    const StepDistribution& step() const { return step_; }
    double variance() const { return variance_; }
    /// Largest |s| over support points with positive probability.
    std::int64_t max_step() const { return max_step_; }

private:
    friend WalkSpec validate_step_distribution(
        std::span<const std::pair<std::int64_t, double>> raw);

    WalkSpec(StepDistribution step, double variance, std::int64_t max_step)
        : step_(std::move(step)), variance_(variance), max_step_(max_step) {}

    StepDistribution step_;
    double variance_ = 0.0;
    std::int64_t max_step_ = 0;
};

/// Validates a raw step law and returns the WalkSpec.
///
/// Check order: distinct/nonempty input (DomainError), NegativeProbabilityError,
/// MassError, MeanError, then the return-time gcd probe (PeriodicError), then
/// the support-difference gcd (SublatticeError). A parity-obstructed walk such
/// as {-1: 1/2, +1: 1/2} therefore reports PeriodicError even though it also
/// lives on a shifted sublattice.
WalkSpec validate_step_distribution(std::span<const std::pair<std::int64_t, double>> raw);

inline WalkSpec validate_step_distribution(
    std::initializer_list<std::pair<std::int64_t, double>> raw) {
    return validate_step_distribution(
        std::span<const std::pair<std::int64_t, double>>(raw.begin(), raw.size()));
}

/// The stored variance  nu = sum_s p_s s^2.
double variance(const WalkSpec& spec);

/// Parses a walk specification file: one `step=probability` line per entry,
/// '#' comments and blank lines allowed. Throws ParseError on malformed input
/// and the validation errors above on a bad law.
WalkSpec load_walk_file(const std::string& path);

} // namespace walkocc
