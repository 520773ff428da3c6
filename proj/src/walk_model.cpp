#include "walkocc/walk_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace walkocc {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kMeanTol = 1e-12;

// gcd of return times {k <= horizon : P[S_k = 0] > 0}, by a small DP over
// positions. Returns 0 if no return is possible within the horizon.
std::int64_t return_time_gcd(const StepDistribution& step, std::int64_t horizon) {
    const std::int64_t ms = std::max(std::llabs(step.min_step),
                                     std::llabs(step.max_step_value()));
    const std::int64_t half = horizon * ms;
    const std::size_t width = static_cast<std::size_t>(2 * half + 1);
    std::vector<double> cur(width, 0.0), nxt(width, 0.0);
    cur[static_cast<std::size_t>(half)] = 1.0;
    std::int64_t g = 0;
    for (std::int64_t k = 1; k <= horizon; ++k) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::size_t i = 0; i < step.probs.size(); ++i) {
            const double p = step.probs[i];
            if (p == 0.0) continue;
            const std::int64_t s = step.min_step + static_cast<std::int64_t>(i);
            for (std::int64_t x = -(k - 1) * ms; x <= (k - 1) * ms; ++x) {
                nxt[static_cast<std::size_t>(half + x + s)] +=
                    p * cur[static_cast<std::size_t>(half + x)];
            }
        }
        if (nxt[static_cast<std::size_t>(half)] > 0.0) {
            g = std::gcd(g, k);
            if (g == 1) return 1;
        }
        cur.swap(nxt);
    }
    return g;
}

} // namespace

WalkSpec validate_step_distribution(std::span<const std::pair<std::int64_t, double>> raw) {
    if (raw.empty()) throw DomainError("step distribution: empty input");

    std::vector<std::pair<std::int64_t, double>> entries(raw.begin(), raw.end());
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].first == entries[i - 1].first)
            throw DomainError("step distribution: duplicate step " +
                              std::to_string(entries[i].first));
    }

    double mass = 0.0, mean = 0.0, var = 0.0;
    for (const auto& [s, p] : entries) {
        if (p < 0.0)
            throw NegativeProbabilityError("step distribution: P[X=" + std::to_string(s) +
                                           "] = " + std::to_string(p) + " < 0");
        mass += p;
        mean += p * static_cast<double>(s);
        var += p * static_cast<double>(s) * static_cast<double>(s);
    }
    if (std::fabs(mass - 1.0) > kMassTol)
        throw MassError("step distribution: total mass " + std::to_string(mass) +
                        " differs from 1 by more than 1e-12");
    if (std::fabs(mean) > kMeanTol)
        throw MeanError("step distribution: mean " + std::to_string(mean) +
                        " differs from 0 by more than 1e-12");

    // Support = steps with positive probability.
    std::vector<std::int64_t> support;
    for (const auto& [s, p] : entries) {
        if (p > 0.0) support.push_back(s);
    }
    if (support.size() < 2 || var <= 0.0)
        throw DomainError("step distribution: needs at least two support points "
                          "with positive probability");

    // Dense prob vector over [min support, max support].
    StepDistribution step;
    step.min_step = support.front();
    step.probs.assign(static_cast<std::size_t>(support.back() - support.front() + 1), 0.0);
    for (const auto& [s, p] : entries) {
        if (p > 0.0) step.probs[static_cast<std::size_t>(s - step.min_step)] = p;
    }

    const std::int64_t ms = std::max(std::llabs(step.min_step),
                                     std::llabs(step.max_step_value()));

    // Aperiodicity probe first (see header note on check order), over the
    // horizon K0 = 2 (max_step + 1)^2. A walk whose observed return times
    // share a factor > 1 is rejected; so is one with no return at all within
    // K0 (conservative rejection, cannot happen for gcd-1 mean-zero laws).
    const std::int64_t probe_horizon = 2 * (ms + 1) * (ms + 1);
    const std::int64_t g_return = return_time_gcd(step, probe_horizon);
    if (g_return != 1)
        throw PeriodicError("step distribution: return times to 0 within horizon " +
                            std::to_string(probe_horizon) + " have gcd " +
                            std::to_string(g_return));

    std::int64_t g_diff = 0;
    for (std::size_t i = 1; i < support.size(); ++i)
        g_diff = std::gcd(g_diff, support[i] - support[0]);
    if (g_diff != 1)
        throw SublatticeError("step distribution: support lies on a sublattice of span " +
                              std::to_string(g_diff));

    return WalkSpec(std::move(step), var, ms);
}

double variance(const WalkSpec& spec) { return spec.variance(); }

WalkSpec load_walk_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open walk file: " + path);
    std::vector<std::pair<std::int64_t, double>> raw;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        // trim
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected `step=probability`");
        try {
            std::size_t used = 0;
            const std::int64_t s = std::stoll(line.substr(0, eq), &used);
            const std::string lhs_rest = line.substr(used, eq - used);
            if (lhs_rest.find_first_not_of(" \t") != std::string::npos)
                throw ParseError("");
            const double p = std::stod(line.substr(eq + 1), &used);
            const std::string rhs_rest = line.substr(eq + 1 + used);
            if (rhs_rest.find_first_not_of(" \t") != std::string::npos)
                throw ParseError("");
            raw.emplace_back(s, p);
        } catch (const ParseError&) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected `step=probability`, got `" + line + "`");
        } catch (const std::exception&) {
            throw ParseError(path + ":" + std::to_string(lineno) +
                             ": expected `step=probability`, got `" + line + "`");
        }
    }
    if (raw.empty()) throw ParseError(path + ": no step entries");
    return validate_step_distribution(raw);
}

} // namespace walkocc
