#include "walkocc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "walkocc/philox.hpp"

namespace walkocc {

namespace {

// Inverse-CDF sampler over the finite support.
struct StepSampler {
    explicit StepSampler(const WalkSpec& spec)
        : min_step(spec.step().min_step), cdf(spec.step().probs.size()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < cdf.size(); ++i) {
            acc += spec.step().probs[i];
            cdf[i] = acc;
        }
        cdf.back() = 1.0; // guard against the sum landing at 1 - eps
    }

    std::int64_t draw(double u) const {
        // support sizes are tiny; linear scan beats binary search here
        std::size_t i = 0;
        while (u >= cdf[i]) ++i;
        return min_step + static_cast<std::int64_t>(i);
    }

    std::int64_t min_step;
    std::vector<double> cdf;
};

} // namespace

PathSample sample_path(const WalkSpec& spec, std::int64_t n, std::uint64_t seed,
                       std::uint64_t trial, std::span<const std::int64_t> levels) {
    if (n < 1) throw DomainError("sample_path: n must be >= 1");
    const StepSampler sampler(spec);
    Philox4x32 rng(seed, trial);
    PathSample out;
    out.visit_counts.assign(levels.size(), 0);
    std::int64_t pos = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        pos += sampler.draw(rng.next_uniform());
        for (std::size_t j = 0; j < levels.size(); ++j)
            if (pos == levels[j]) ++out.visit_counts[j];
    }
    out.endpoint = pos;
    return out;
}

std::uint64_t McEstimate::count_at(std::int64_t x, std::int64_t ell) const {
    const std::int64_t xi = x - x_offset;
    if (xi < 0 || xi >= x_count() || ell < 0 || ell > n) return 0;
    return counts[static_cast<std::size_t>(xi * (n + 1) + ell)];
}

double McEstimate::frequency(std::int64_t x, std::int64_t ell) const {
    return static_cast<double>(count_at(x, ell)) / static_cast<double>(trials);
}

double McEstimate::std_err(std::int64_t x, std::int64_t ell) const {
    const double p = frequency(x, ell);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

McEstimate estimate_joint(const WalkSpec& spec, std::int64_t n, std::int64_t a,
                          std::int64_t trials, std::uint64_t seed, int workers) {
    if (n < 1) throw DomainError("estimate_joint: n must be >= 1");
    if (trials < 1) throw DomainError("estimate_joint: trials must be >= 1");

    McEstimate est;
    est.n = n;
    est.a = a;
    est.trials = trials;
    const std::int64_t ms = spec.max_step();
    est.x_offset = -n * ms;
    const std::int64_t width = 2 * n * ms + 1;
    const std::int64_t cols = n + 1;
    est.counts.assign(static_cast<std::size_t>(width * cols), 0);

    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    workers = static_cast<int>(std::min<std::int64_t>(workers, trials));

    const StepSampler sampler(spec);
    const auto run_chunk = [&](std::int64_t t_begin, std::int64_t t_end,
                               std::vector<std::uint64_t>& local) {
        for (std::int64_t t = t_begin; t < t_end; ++t) {
            Philox4x32 rng(seed, static_cast<std::uint64_t>(t));
            std::int64_t pos = 0;
            std::int64_t visits = 0;
            for (std::int64_t k = 0; k < n; ++k) {
                pos += sampler.draw(rng.next_uniform());
                if (pos == a) ++visits;
            }
            ++local[static_cast<std::size_t>((pos - est.x_offset) * cols + visits)];
        }
    };

    if (workers == 1) {
        run_chunk(0, trials, est.counts);
        return est;
    }

    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(workers),
        std::vector<std::uint64_t>(est.counts.size(), 0));
    std::vector<std::thread> pool;
    const std::int64_t chunk = (trials + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(trials, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back(run_chunk, lo, hi, std::ref(partial[static_cast<std::size_t>(w)]));
    }
    for (auto& th : pool) th.join();
    for (const auto& local : partial)
        for (std::size_t i = 0; i < est.counts.size(); ++i) est.counts[i] += local[i];
    return est;
}

void write_mc_csv(std::ostream& out, const McEstimate& est) {
    out << "x,ell,probability,std_err\n";
    char buf[128];
    const std::int64_t cols = est.n + 1;
    for (std::int64_t xi = 0; xi < est.x_count(); ++xi) {
        for (std::int64_t ell = 0; ell <= est.n; ++ell) {
            const std::uint64_t c = est.counts[static_cast<std::size_t>(xi * cols + ell)];
            if (c == 0) continue;
            const std::int64_t x = est.x_offset + xi;
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g,%.17g\n",
                          static_cast<long long>(x), static_cast<long long>(ell),
                          est.frequency(x, ell), est.std_err(x, ell));
            out << buf;
        }
    }
}

} // namespace walkocc
