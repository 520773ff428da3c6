#include "walkocc/studies.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "walkocc/asymptotics.hpp"
#include "walkocc/convolve.hpp"
#include "walkocc/decomposition.hpp"
#include "walkocc/exact_engine.hpp"
#include "walkocc/montecarlo.hpp"

namespace walkocc {

namespace {

struct KindName {
    StudyKind kind;
    const char* name;
};

constexpr KindName kKindNames[] = {
    {StudyKind::kMain1, "main1"},     {StudyKind::kMain2, "main2"},
    {StudyKind::kKaigh, "kaigh"},     {StudyKind::kUchiyama, "uchiyama"},
    {StudyKind::kOmega, "omega"},     {StudyKind::kSurvival, "survival"},
    {StudyKind::kTails, "tails"},     {StudyKind::kIdentities, "identities"},
    {StudyKind::kGnedenko, "gnedenko"}, {StudyKind::kMcCheck, "mc-check"},
};

constexpr double kGridTol = 1e-12;

} // namespace

const char* to_string(StudyKind kind) {
    for (const auto& kn : kKindNames)
        if (kn.kind == kind) return kn.name;
    return "?";
}

StudyKind parse_study_kind(const std::string& name) {
    for (const auto& kn : kKindNames)
        if (name == kn.name) return kn.kind;
    throw ConfigError("unknown study kind `" + name + "`");
}

namespace {

// ---------------------------------------------------------------------------
// defaults + validation
// ---------------------------------------------------------------------------

void apply_defaults(StudyConfig& cfg) {
    auto& g = cfg.regime;
    const StudyKind k = cfg.kind;
    if (g.alpha_grid.empty()) {
        if (k == StudyKind::kMain1 || k == StudyKind::kMain2 || k == StudyKind::kKaigh)
            g.alpha_grid = {0.0, 0.5, 1.0, 2.0};
        else if (k == StudyKind::kUchiyama || k == StudyKind::kTails)
            g.alpha_grid = {0.5, 1.0, 2.0};
    }
    if (g.xi_grid.empty()) {
        if (k == StudyKind::kMain1) g.xi_grid = {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0};
        else if (k == StudyKind::kUchiyama) g.xi_grid = {0.0, -0.5, -1.0, -2.0};
    }
    if (g.lambda_grid.empty()) {
        if (k == StudyKind::kMain1 || k == StudyKind::kMain2) g.lambda_grid = {0.5, 1.0, 2.0};
    }
    if (cfg.n_grid.empty()) {
        switch (k) {
            case StudyKind::kSurvival: cfg.n_grid = {1000, 10000, 100000}; break;
            case StudyKind::kMcCheck: cfg.n_grid = {100}; break;
            case StudyKind::kIdentities: break; // no n sweep
            default: cfg.n_grid = {64, 256, 1024, 4096}; break;
        }
    }
}

void validate_config(const StudyConfig& cfg) {
    const auto& g = cfg.regime;
    if (!(g.kappa > 0.0)) throw ConfigError("regime: kappa must be > 0");

    const auto check_grid = [&](const std::vector<double>& vals, const char* which) {
        for (double v : vals) {
            if (v != 0.0 && std::fabs(v) + kGridTol < g.kappa)
                throw ConfigError(std::string("regime: ") + which + " value " +
                                  std::to_string(v) + " is neither 0 nor >= kappa");
        }
    };
    check_grid(g.alpha_grid, "alpha_grid");
    check_grid(g.xi_grid, "xi_grid");
    check_grid(g.lambda_grid, "lambda_grid");

    if (cfg.kind != StudyKind::kIdentities) {
        if (cfg.n_grid.empty()) throw ConfigError("n_grid must be nonempty");
        for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
            if (cfg.n_grid[i] < 1) throw ConfigError("n_grid entries must be >= 1");
            if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1])
                throw ConfigError("n_grid must be strictly increasing");
        }
    }

    if (cfg.kind == StudyKind::kMain1 || cfg.kind == StudyKind::kMain2) {
        for (double v : g.lambda_grid)
            if (v + kGridTol < g.kappa)
                throw ConfigError(std::string(to_string(cfg.kind)) +
                                  " requires ell >= kappa sqrt(n): lambda value " +
                                  std::to_string(v) + " below kappa");
        const double rn_min = std::sqrt(static_cast<double>(cfg.n_grid.front()));
        for (double v : g.lambda_grid)
            if (v > rn_min)
                throw ConfigError("lambda value " + std::to_string(v) +
                                  " makes ell exceed n at n = " +
                                  std::to_string(cfg.n_grid.front()));
    }
    if (cfg.kind == StudyKind::kUchiyama || cfg.kind == StudyKind::kTails) {
        for (double v : g.alpha_grid)
            if (v == 0.0)
                throw ConfigError(std::string(to_string(cfg.kind)) +
                                  " requires |a| >= kappa sqrt(n): alpha 0 not allowed");
    }
    if (cfg.kind == StudyKind::kMcCheck && cfg.trials < 1)
        throw ConfigError("mc-check requires trials >= 1");
}

// ---------------------------------------------------------------------------
// scaled coordinates
// ---------------------------------------------------------------------------

// round(g * sqrt(n)) with ties away from zero, clamped so nonzero grid values
// stay inside the regime (|result| >= ceil(kappa sqrt(n))).
std::int64_t scaled_level(double g, double rn, double kappa) {
    if (g == 0.0) return 0;
    auto v = static_cast<std::int64_t>(std::llround(g * rn));
    const auto floor_abs = static_cast<std::int64_t>(std::ceil(kappa * rn - kGridTol));
    if (std::llabs(v) < floor_abs) v = (g > 0.0) ? floor_abs : -floor_abs;
    return v;
}

std::int64_t scaled_count(double g, double rn, double kappa) {
    auto v = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(g * rn)));
    const auto floor_abs = static_cast<std::int64_t>(std::ceil(kappa * rn - kGridTol));
    return std::max(v, floor_abs);
}

struct EvalOut {
    std::vector<StudyRow> rows;
    double sup = 0.0;
};

StudyRow make_row(StudyKind kind, std::int64_t n, std::int64_t a, std::int64_t x,
                  std::int64_t ell, double exact, double asym, double err, double alpha,
                  double xi, double lambda) {
    StudyRow r;
    r.kind = kind;
    r.n = n; r.a = a; r.x = x; r.ell = ell;
    r.exact = exact; r.asymptotic = asym; r.abs_error = err;
    r.alpha = alpha; r.xi = xi; r.lambda = lambda;
    return r;
}

// ---------------------------------------------------------------------------
// per-kind evaluators (one n at a time)
// ---------------------------------------------------------------------------

EvalOut eval_main1(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    PathDecomposer dec(spec, n);
    for (double alpha : cfg.regime.alpha_grid) {
        const std::int64_t a = scaled_level(alpha, rn, cfg.regime.kappa);
        for (double xi : cfg.regime.xi_grid) {
            const std::int64_t x = a + scaled_level(xi, rn, cfg.regime.kappa);
            for (double lam : cfg.regime.lambda_grid) {
                const std::int64_t ell = scaled_count(lam, rn, cfg.regime.kappa);
                const double exact = dec.joint(x, a, ell);
                const double asym = phi(nu, static_cast<double>(a) / rn,
                                        static_cast<double>(x) / rn,
                                        static_cast<double>(ell) / rn);
                const double err = std::fabs(static_cast<double>(n) * exact - asym);
                out.sup = std::max(out.sup, err);
                out.rows.push_back(make_row(cfg.kind, n, a, x, ell, exact, asym, err,
                                            static_cast<double>(a) / rn,
                                            static_cast<double>(x - a) / rn,
                                            static_cast<double>(ell) / rn));
            }
        }
    }
    return out;
}

EvalOut eval_main2(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    PathDecomposer dec(spec, n);
    for (double alpha : cfg.regime.alpha_grid) {
        const std::int64_t a = scaled_level(alpha, rn, cfg.regime.kappa);
        for (double lam : cfg.regime.lambda_grid) {
            const std::int64_t ell = scaled_count(lam, rn, cfg.regime.kappa);
            const double exact = dec.occupation(a, ell);
            const double asym = psi(nu, static_cast<double>(a) / rn,
                                    static_cast<double>(ell) / rn);
            const double err = std::fabs(rn * exact - asym);
            out.sup = std::max(out.sup, err);
            out.rows.push_back(make_row(cfg.kind, n, a, -1, ell, exact, asym, err,
                                        static_cast<double>(a) / rn, 0.0,
                                        static_cast<double>(ell) / rn));
        }
    }
    return out;
}

EvalOut eval_kaigh(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    for (double alpha : cfg.regime.alpha_grid) {
        const std::int64_t a = scaled_level(alpha, rn, cfg.regime.kappa);
        const Pmf fp = first_passage_pmf(spec, a, n);
        const double exact = fp.at(n);
        const double asym = kaigh_hitting_density(nu, static_cast<double>(n),
                                                  static_cast<double>(a));
        const double err = std::fabs(static_cast<double>(n) * exact - asym);
        out.sup = std::max(out.sup, err);
        out.rows.push_back(make_row(cfg.kind, n, a, -1, -1, exact, asym, err,
                                    static_cast<double>(a) / rn, 0.0, 0.0));
    }
    return out;
}

EvalOut eval_uchiyama(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    bool any = false;
    for (double alpha : cfg.regime.alpha_grid) {
        const std::int64_t a = scaled_level(alpha, rn, cfg.regime.kappa);
        const Pmf killed = avoid_pmf(spec, a, n);
        for (double xi : cfg.regime.xi_grid) {
            // stay in the theorem's half-plane: x on the origin side of a
            if ((a > 0 && xi > 0.0) || (a < 0 && xi < 0.0)) continue;
            any = true;
            const std::int64_t x = a + scaled_level(xi, rn, cfg.regime.kappa);
            const double exact = killed.at(x);
            const double asym = uchiyama_avoid(nu, static_cast<double>(n),
                                               static_cast<double>(x),
                                               static_cast<double>(a));
            const double err = std::fabs(rn * exact - asym);
            out.sup = std::max(out.sup, err);
            out.rows.push_back(make_row(cfg.kind, n, a, x, 0, exact, asym, err,
                                        static_cast<double>(a) / rn,
                                        static_cast<double>(x - a) / rn, 0.0));
        }
    }
    if (!any)
        throw ConfigError("uchiyama: no (alpha, xi) pair satisfies the half-plane "
                          "conditions");
    return out;
}

EvalOut eval_omega(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    const auto ell = static_cast<std::int64_t>(std::ceil(rn - kGridTol));
    Pmf fp0 = first_passage_pmf(spec, 0, n);
    fp0.trim();
    const Pmf om = (ell == 1) ? Pmf::delta(0) : self_convolve_power(fp0, ell - 1, n).pmf;
    double sup = 0.0;
    std::int64_t arg_m = 1;
    double best_exact = 0.0, best_asym = 0.0;
    for (std::int64_t m = 1; m <= n; ++m) {
        const double exact = om.at(m);
        const double asym = stable_omega_density(nu, static_cast<double>(n),
                                                 static_cast<double>(ell),
                                                 static_cast<double>(m));
        const double err = std::fabs(static_cast<double>(n) * exact - asym);
        if (err > sup) {
            sup = err;
            arg_m = m;
            best_exact = exact;
            best_asym = asym;
        }
    }
    out.sup = sup;
    // one row per n: the arg-sup over m <= n (x column carries m)
    out.rows.push_back(make_row(cfg.kind, n, -1, arg_m, ell, best_exact, best_asym, sup,
                                0.0, static_cast<double>(arg_m) / static_cast<double>(n),
                                static_cast<double>(ell) / rn));
    return out;
}

EvalOut eval_tails(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    for (double alpha : cfg.regime.alpha_grid) {
        const std::int64_t a = scaled_level(alpha, rn, cfg.regime.kappa);
        const Pmf fp = first_passage_pmf(spec, a, n);
        double hit_mass = 0.0;
        for (std::int64_t k = 1; k <= n; ++k) hit_mass += fp.values[static_cast<std::size_t>(k)];
        const double exact = 1.0 - hit_mass;
        const double asym = avoid_prob_limit(nu, static_cast<double>(n),
                                             static_cast<double>(a));
        const double err = std::fabs(exact - asym);
        out.sup = std::max(out.sup, err);
        out.rows.push_back(make_row(cfg.kind, n, a, -1, 0, exact, asym, err,
                                    static_cast<double>(a) / rn, 0.0, 0.0));
    }
    return out;
}

EvalOut eval_gnedenko(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n) {
    EvalOut out;
    const double nu = spec.variance();
    const double rn = std::sqrt(static_cast<double>(n));
    const Pmf m = marginal_pmf(spec, n);
    double sup = 0.0;
    std::int64_t arg_x = 0;
    double best_exact = 0.0, best_asym = 0.0;
    for (std::int64_t x = m.lo(); x <= m.hi(); ++x) {
        const double exact = m.at(x);
        const double asym = gaussian_density(nu, static_cast<double>(x) / rn);
        const double err = std::fabs(rn * exact - asym);
        if (err > sup) {
            sup = err;
            arg_x = x;
            best_exact = exact;
            best_asym = asym;
        }
    }
    out.sup = sup;
    out.rows.push_back(make_row(cfg.kind, n, -1, arg_x, -1, best_exact, best_asym, sup,
                                0.0, static_cast<double>(arg_x) / rn, 0.0));
    return out;
}

EvalOut eval_mc_check(const WalkSpec& spec, const StudyConfig& cfg, std::int64_t n,
                      int workers) {
    EvalOut out;
    EngineLimits limits;
    limits.oracle_cap = std::max<std::int64_t>(limits.oracle_cap, n);
    const JointTable oracle = joint_pmf(spec, 0, n, limits);
    const McEstimate est = estimate_joint(spec, n, 0, cfg.trials, cfg.seed, workers);
    std::int64_t cells = 0, within = 0;
    const double trials = static_cast<double>(cfg.trials);
    for (std::int64_t x = oracle.x_offset; x < oracle.x_offset + oracle.x_count(); ++x) {
        for (std::int64_t ell = 0; ell <= n; ++ell) {
            const double p = oracle.at(x, ell);
            if (p == 0.0) continue;
            ++cells;
            const double sigma = std::sqrt(p * (1.0 - p) / trials);
            if (std::fabs(est.frequency(x, ell) - p) <= 4.0 * sigma) ++within;
        }
    }
    const double fraction = cells == 0 ? 1.0 : static_cast<double>(within) /
                                               static_cast<double>(cells);
    out.sup = 1.0 - fraction;
    out.rows.push_back(make_row(cfg.kind, n, 0, -1, -1, fraction, 1.0, 1.0 - fraction,
                                0.0, 0.0, 0.0));
    return out;
}

EvalOut eval_identities(const StudyConfig& cfg) {
    EvalOut out;
    const std::vector<double> yz = {0.25, 0.5, 1.0, 2.0, 4.0};
    const std::vector<double> ts = {0.5, 1.0, 2.0};
    for (int which = 1; which <= 2; ++which) {
        for (double t : ts) {
            for (double y : yz) {
                std::vector<double> zs = yz;
                if (which == 2) zs.insert(zs.begin(), 0.0);
                for (double z : zs) {
                    const IdentityCheck c = integral_identity_check(which, y, z, t);
                    const double err = std::fabs(c.lhs - c.rhs);
                    out.sup = std::max(out.sup, err);
                    out.rows.push_back(make_row(cfg.kind, -1, -1, which, -1, c.lhs, c.rhs,
                                                err, y, z, t));
                }
            }
        }
    }
    return out;
}

EvalOut eval_survival_all(const WalkSpec& spec, const StudyConfig& cfg,
                          std::vector<std::pair<std::int64_t, double>>& sup_errors) {
    // one DP at the largest n serves the whole grid
    EvalOut out;
    const double nu = spec.variance();
    const std::int64_t n_max = cfg.n_grid.back();
    const std::vector<double> surv = survival_tail(spec, n_max);
    const double asym = survival_limit(nu);
    for (std::int64_t n : cfg.n_grid) {
        const double rn = std::sqrt(static_cast<double>(n));
        const double exact = surv[static_cast<std::size_t>(n)];
        const double err = std::fabs(rn * exact - asym);
        out.rows.push_back(make_row(cfg.kind, n, -1, -1, -1, exact, asym, err, 0.0, 0.0,
                                    0.0));
        sup_errors.emplace_back(n, err);
    }
    return out;
}

// bounded worker pool over the n grid
std::vector<EvalOut> run_over_n(const StudyConfig& cfg,
                                const std::vector<std::int64_t>& ns, int workers,
                                const std::function<EvalOut(std::int64_t)>& eval) {
    std::vector<EvalOut> slots(ns.size());
    if (workers <= 0) {
        const unsigned hc = std::thread::hardware_concurrency();
        workers = hc == 0 ? 1 : static_cast<int>(hc);
    }
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers),
                                                     ns.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < ns.size(); ++i) slots[i] = eval(ns[i]);
        return slots;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= ns.size()) return;
                try {
                    slots[i] = eval(ns[i]);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return slots;
}

} // namespace

StudyResult run_study(const StudyConfig& config, const WalkSpec& spec, int workers) {
    StudyConfig cfg = config;
    apply_defaults(cfg);
    validate_config(cfg);

    StudyResult result;
    result.kind = cfg.kind;

    if (cfg.kind == StudyKind::kIdentities) {
        EvalOut out = eval_identities(cfg);
        result.rows = std::move(out.rows);
        result.sup_errors.emplace_back(-1, out.sup);
        return result;
    }
    if (cfg.kind == StudyKind::kSurvival) {
        EvalOut out = eval_survival_all(spec, cfg, result.sup_errors);
        result.rows = std::move(out.rows);
        return result;
    }

    const std::function<EvalOut(std::int64_t)> eval = [&](std::int64_t n) -> EvalOut {
        switch (cfg.kind) {
            case StudyKind::kMain1: return eval_main1(spec, cfg, n);
            case StudyKind::kMain2: return eval_main2(spec, cfg, n);
            case StudyKind::kKaigh: return eval_kaigh(spec, cfg, n);
            case StudyKind::kUchiyama: return eval_uchiyama(spec, cfg, n);
            case StudyKind::kOmega: return eval_omega(spec, cfg, n);
            case StudyKind::kTails: return eval_tails(spec, cfg, n);
            case StudyKind::kGnedenko: return eval_gnedenko(spec, cfg, n);
            case StudyKind::kMcCheck: return eval_mc_check(spec, cfg, n, workers);
            default: throw ConfigError("unhandled study kind");
        }
    };

    // mc-check parallelizes inside estimate_joint; keep the n loop sequential
    const int pool = (cfg.kind == StudyKind::kMcCheck) ? 1 : workers;
    std::vector<EvalOut> slots = run_over_n(cfg, cfg.n_grid, pool, eval);

    for (std::size_t i = 0; i < slots.size(); ++i) {
        result.sup_errors.emplace_back(cfg.n_grid[i], slots[i].sup);
        for (auto& row : slots[i].rows) result.rows.push_back(row);
    }
    std::stable_sort(result.rows.begin(), result.rows.end(),
                     [](const StudyRow& l, const StudyRow& r) {
                         if (l.n != r.n) return l.n < r.n;
                         if (l.a != r.a) return l.a < r.a;
                         if (l.x != r.x) return l.x < r.x;
                         return l.ell < r.ell;
                     });
    return result;
}

StudyResult run_study(const StudyConfig& config, int workers) {
    if (config.walk.empty())
        throw ConfigError("study config: walk file path is required");
    const WalkSpec spec = load_walk_file(config.walk);
    return run_study(config, spec, workers);
}

// ---------------------------------------------------------------------------
// config file
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected a number, got `" + s + "`");
    }
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const std::int64_t v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where + ": expected an integer, got `" + s + "`");
    }
}

} // namespace

StudyConfig load_study_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);

    StudyConfig cfg;
    bool have_kind = false;
    std::string section = "study";
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": unterminated section");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "study" && section != "regime")
                throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected `key = value`");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (section == "study") {
            if (key == "walk") cfg.walk = value;
            else if (key == "kind") { cfg.kind = parse_study_kind(value); have_kind = true; }
            else if (key == "n_grid") {
                cfg.n_grid.clear();
                for (const auto& tok : split_list(value))
                    cfg.n_grid.push_back(parse_int(tok, where));
            }
            else if (key == "out_csv") cfg.out_csv = value;
            else if (key == "out_svg") cfg.out_svg = value;
            else if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(parse_int(value, where));
            else if (key == "trials") cfg.trials = parse_int(value, where);
            else throw ConfigError(where + ": unknown [study] key `" + key + "`");
        } else {
            if (key == "kappa") cfg.regime.kappa = parse_double(value, where);
            else if (key == "alpha_grid" || key == "xi_grid" || key == "lambda_grid") {
                std::vector<double> vals;
                for (const auto& tok : split_list(value))
                    vals.push_back(parse_double(tok, where));
                if (key == "alpha_grid") cfg.regime.alpha_grid = std::move(vals);
                else if (key == "xi_grid") cfg.regime.xi_grid = std::move(vals);
                else cfg.regime.lambda_grid = std::move(vals);
            }
            else throw ConfigError(where + ": unknown [regime] key `" + key + "`");
        }
    }
    if (!have_kind) throw ConfigError(path + ": missing `kind`");
    return cfg;
}

// ---------------------------------------------------------------------------
// rows CSV
// ---------------------------------------------------------------------------

namespace {
constexpr const char* kRowsHeader = "kind,n,a,x,ell,exact,asymptotic,abs_error,alpha,xi,lambda";
}

void write_rows_csv(std::ostream& out, const std::vector<StudyRow>& rows) {
    out << kRowsHeader << "\n";
    char buf[320];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "%s,%lld,%lld,%lld,%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      to_string(r.kind), static_cast<long long>(r.n),
                      static_cast<long long>(r.a), static_cast<long long>(r.x),
                      static_cast<long long>(r.ell), r.exact, r.asymptotic, r.abs_error,
                      r.alpha, r.xi, r.lambda);
        out << buf;
    }
}

std::vector<StudyRow> read_rows_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open rows CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (trim(line) != kRowsHeader)
        throw ParseError(path + ": bad header `" + trim(line) + "`");

    std::vector<StudyRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(lineno);
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 11)
            throw ParseError(where + ": expected 11 fields, got " +
                             std::to_string(fields.size()));
        StudyRow r;
        try {
            r.kind = parse_study_kind(fields[0]);
        } catch (const ConfigError& e) {
            throw ParseError(where + ": " + e.what());
        }
        try {
            r.n = std::stoll(fields[1]);
            r.a = std::stoll(fields[2]);
            r.x = std::stoll(fields[3]);
            r.ell = std::stoll(fields[4]);
            r.exact = std::stod(fields[5]);
            r.asymptotic = std::stod(fields[6]);
            r.abs_error = std::stod(fields[7]);
            r.alpha = std::stod(fields[8]);
            r.xi = std::stod(fields[9]);
            r.lambda = std::stod(fields[10]);
        } catch (const std::exception&) {
            throw ParseError(where + ": malformed numeric field");
        }
        rows.push_back(r);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// convergence assertion
// ---------------------------------------------------------------------------

ConvergenceCheck check_convergence(const StudyResult& result) {
    ConvergenceCheck out;
    const auto& e = result.sup_errors;
    char buf[160];

    if (result.kind == StudyKind::kIdentities) {
        const double sup = e.empty() ? 0.0 : e.front().second;
        out.pass = sup <= 1e-8;
        std::snprintf(buf, sizeof buf, "sup |lhs-rhs| = %.3e (need <= 1e-8)", sup);
        out.detail = buf;
        return out;
    }
    if (result.kind == StudyKind::kMcCheck) {
        out.pass = true;
        double worst = 0.0;
        for (const auto& [n, v] : e) {
            worst = std::max(worst, v);
            if (v > 0.01) out.pass = false;
        }
        std::snprintf(buf, sizeof buf,
                      "worst off-coverage = %.4f (need >= 99%% of cells within 4 sigma)",
                      worst);
        out.detail = buf;
        return out;
    }
    if (result.kind == StudyKind::kSurvival) {
        out.pass = !e.empty() && e.back().second <= 0.02;
        for (std::size_t i = 1; i < e.size(); ++i)
            if (!(e[i].second < e[i - 1].second)) out.pass = false;
        std::snprintf(buf, sizeof buf,
                      "error at n=%lld is %.3e (need <= 0.02 and decreasing in n)",
                      e.empty() ? -1LL : static_cast<long long>(e.back().first),
                      e.empty() ? 0.0 : e.back().second);
        out.detail = buf;
        return out;
    }

    if (e.size() < 2) {
        out.pass = false;
        out.detail = "need at least two n values";
        return out;
    }
    bool mono = true;
    for (std::size_t i = 1; i < e.size(); ++i)
        if (e[i].second > 1.05 * e[i - 1].second) mono = false;
    const bool halved = e.back().second <= 0.5 * e.front().second;
    out.pass = mono && halved;
    std::snprintf(buf, sizeof buf,
                  "e(%lld)=%.4e, e(%lld)=%.4e, nonincreasing(5%%)=%s, halved=%s",
                  static_cast<long long>(e.front().first), e.front().second,
                  static_cast<long long>(e.back().first), e.back().second,
                  mono ? "yes" : "no", halved ? "yes" : "no");
    out.detail = buf;
    return out;
}

} // namespace walkocc
