#include "walkocc/exact_engine.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

namespace walkocc {

namespace {

void require_horizon(std::int64_t n, const char* what) {
    if (n < 1) throw DomainError(std::string(what) + ": horizon must be >= 1");
}

std::int64_t checked_width(const WalkSpec& spec, std::int64_t n, const EngineLimits& limits) {
    const std::int64_t width = 2 * n * spec.max_step() + 1;
    if (width > limits.max_vector_len)
        throw ResourceError("DP vector of length " + std::to_string(width) +
                            " exceeds cap " + std::to_string(limits.max_vector_len));
    return width;
}

// Shared position-space DP. Buffers carry a max_step pad on each side so the
// step kernel never reads out of bounds; entries outside the active window
// [-k*max_step, k*max_step] stay exactly zero. absorb_at, when set, removes
// the mass arriving at *absorb_at after each step and reports it per step.
class PositionDp {
public:
    PositionDp(const WalkSpec& spec, std::int64_t n, const EngineLimits& limits)
        : spec_(spec),
          ms_(spec.max_step()),
          n_(n),
          width_(checked_width(spec, n, limits)),
          center_(n * ms_ + ms_),
          cur_(static_cast<std::size_t>(width_ + 2 * ms_), 0.0),
          nxt_(static_cast<std::size_t>(width_ + 2 * ms_), 0.0) {
        cur_[static_cast<std::size_t>(center_)] = 1.0;
    }

    // Runs steps 1..n; absorbed[k] = mass removed at step k (when absorbing).
    void run(const std::int64_t* absorb_at, std::vector<double>* absorbed) {
        const auto& probs = spec_.step().probs;
        const std::int64_t kmin = spec_.step().min_step;
        const std::int64_t kcount = static_cast<std::int64_t>(probs.size());
        const double* pk = probs.data();
        for (std::int64_t k = 1; k <= n_; ++k) {
            const std::int64_t lo = center_ - k * ms_;
            const std::int64_t hi = center_ + k * ms_;
            const double* in = cur_.data();
            double* out = nxt_.data();
            for (std::int64_t i = lo; i <= hi; ++i) {
                const double* src = in + (i - kmin - (kcount - 1));
                double acc = 0.0;
                for (std::int64_t j = 0; j < kcount; ++j) acc += pk[j] * src[kcount - 1 - j];
                out[i] = acc;
            }
            if (absorb_at) {
                const std::int64_t ai = center_ + *absorb_at;
                if (ai >= lo && ai <= hi) {
                    if (absorbed) (*absorbed)[static_cast<std::size_t>(k)] = out[ai];
                    out[ai] = 0.0;
                }
            }
            cur_.swap(nxt_);
        }
    }

    Pmf extract() const {
        Pmf out;
        out.offset = -n_ * ms_;
        out.values.assign(cur_.begin() + static_cast<std::ptrdiff_t>(center_ - n_ * ms_),
                          cur_.begin() + static_cast<std::ptrdiff_t>(center_ + n_ * ms_ + 1));
        return out;
    }

private:
    const WalkSpec& spec_;
    std::int64_t ms_;
    std::int64_t n_;
    std::int64_t width_;
    std::int64_t center_;
    std::vector<double> cur_, nxt_;
};

} // namespace

Pmf marginal_pmf(const WalkSpec& spec, std::int64_t n, const EngineLimits& limits) {
    require_horizon(n, "marginal_pmf");
    PositionDp dp(spec, n, limits);
    dp.run(nullptr, nullptr);
    Pmf out = dp.extract();
    out.trim();
    return out;
}

Pmf first_passage_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t N,
                      const EngineLimits& limits) {
    require_horizon(N, "first_passage_pmf");
    PositionDp dp(spec, N, limits);
    std::vector<double> absorbed(static_cast<std::size_t>(N + 1), 0.0);
    dp.run(&a, &absorbed);
    return Pmf(0, std::move(absorbed)); // index k = P[tau_a = k]; index 0 is 0
}

std::vector<double> survival_tail(const WalkSpec& spec, std::int64_t N,
                                  const EngineLimits& limits) {
    if (N < 0) throw DomainError("survival_tail: N must be >= 0");
    std::vector<double> surv(static_cast<std::size_t>(N + 1), 1.0);
    if (N == 0) return surv;
    const Pmf fp = first_passage_pmf(spec, 0, N, limits);
    double alive = 1.0;
    for (std::int64_t k = 1; k <= N; ++k) {
        alive -= fp.values[static_cast<std::size_t>(k)];
        surv[static_cast<std::size_t>(k)] = alive;
    }
    return surv;
}

Pmf avoid_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
              const EngineLimits& limits) {
    require_horizon(n, "avoid_pmf");
    PositionDp dp(spec, n, limits);
    dp.run(&a, nullptr);
    return dp.extract(); // untrimmed: callers index the full [-n*ms, n*ms] span
}

JointTable joint_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
                     const EngineLimits& limits) {
    require_horizon(n, "joint_pmf");
    if (n > limits.oracle_cap)
        throw ResourceError("joint_pmf horizon " + std::to_string(n) +
                            " exceeds oracle cap " + std::to_string(limits.oracle_cap) +
                            " (raise EngineLimits::oracle_cap to override)");
    const std::int64_t ms = spec.max_step();
    const std::int64_t width = checked_width(spec, n, limits);
    const std::int64_t cols = n + 1;

    JointTable tab;
    tab.n = n;
    tab.a = a;
    tab.x_offset = -n * ms;
    std::vector<double> cur(static_cast<std::size_t>(width * cols), 0.0);
    std::vector<double> nxt(static_cast<std::size_t>(width * cols), 0.0);
    const std::int64_t center = n * ms;
    cur[static_cast<std::size_t>(center * cols)] = 1.0; // (x=0, ell=0)

    const auto& probs = spec.step().probs;
    const std::int64_t kmin = spec.step().min_step;
    for (std::int64_t k = 1; k <= n; ++k) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::size_t j = 0; j < probs.size(); ++j) {
            const double p = probs[j];
            if (p == 0.0) continue;
            const std::int64_t s = kmin + static_cast<std::int64_t>(j);
            const std::int64_t src_lo = std::max<std::int64_t>(0, -s);
            const std::int64_t src_hi = std::min<std::int64_t>(width, width - s);
            for (std::int64_t xi = src_lo; xi < src_hi; ++xi) {
                const double* src = &cur[static_cast<std::size_t>(xi * cols)];
                double* dst = &nxt[static_cast<std::size_t>((xi + s) * cols)];
                for (std::int64_t ell = 0; ell <= k - 1; ++ell) dst[ell] += p * src[ell];
            }
        }
        // Arriving at level a bumps the visit count.
        const std::int64_t ai = center + a;
        if (ai >= 0 && ai < width) {
            double* row = &nxt[static_cast<std::size_t>(ai * cols)];
            for (std::int64_t ell = k; ell >= 1; --ell) row[ell] = row[ell - 1];
            row[0] = 0.0;
        }
        cur.swap(nxt);
    }
    tab.entries = std::move(cur);
    return tab;
}

Pmf occupation_pmf(const WalkSpec& spec, std::int64_t a, std::int64_t n,
                   const EngineLimits& limits) {
    const JointTable tab = joint_pmf(spec, a, n, limits);
    Pmf out(0, std::vector<double>(static_cast<std::size_t>(n + 1), 0.0));
    const std::int64_t cols = n + 1;
    for (std::int64_t xi = 0; xi < tab.x_count(); ++xi)
        for (std::int64_t ell = 0; ell <= n; ++ell)
            out.values[static_cast<std::size_t>(ell)] +=
                tab.entries[static_cast<std::size_t>(xi * cols + ell)];
    return out;
}

void write_pmf_csv(std::ostream& out, const Pmf& pmf) {
    out << "index,probability\n";
    char buf[64];
    for (std::size_t i = 0; i < pmf.values.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g\n",
                      static_cast<long long>(pmf.offset + static_cast<std::int64_t>(i)),
                      pmf.values[i]);
        out << buf;
    }
}

void write_joint_csv(std::ostream& out, const JointTable& table) {
    out << "x,ell,probability\n";
    char buf[96];
    const std::int64_t cols = table.n + 1;
    for (std::int64_t xi = 0; xi < table.x_count(); ++xi) {
        for (std::int64_t ell = 0; ell <= table.n; ++ell) {
            const double v = table.entries[static_cast<std::size_t>(xi * cols + ell)];
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%lld,%lld,%.17g\n",
                          static_cast<long long>(table.x_offset + xi),
                          static_cast<long long>(ell), v);
            out << buf;
        }
    }
}

} // namespace walkocc
