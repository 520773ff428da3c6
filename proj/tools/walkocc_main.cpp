#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walkocc/asymptotics.hpp"
#include "walkocc/decomposition.hpp"
#include "walkocc/exact_engine.hpp"
#include "walkocc/montecarlo.hpp"
#include "walkocc/studies.hpp"
#include "walkocc/walk_model.hpp"

namespace {

using namespace walkocc;

int cmd_validate(const std::string& walk_path) {
    const WalkSpec spec = load_walk_file(walk_path);
    std::printf("ok: %zu support points, max step %lld, variance %.17g\n",
                spec.step().probs.size(), static_cast<long long>(spec.max_step()),
                spec.variance());
    return 0;
}

int cmd_exact(const std::string& walk_path, std::int64_t n, bool have_a, std::int64_t a,
              std::int64_t oracle_cap) {
    const WalkSpec spec = load_walk_file(walk_path);
    if (!have_a) {
        write_pmf_csv(std::cout, marginal_pmf(spec, n));
    } else {
        EngineLimits limits;
        limits.oracle_cap = oracle_cap;
        write_joint_csv(std::cout, joint_pmf(spec, a, n, limits));
    }
    return 0;
}

int cmd_decompose(const std::string& walk_path, std::int64_t n, std::int64_t a,
                  bool have_x, std::int64_t x, std::int64_t ell) {
    const WalkSpec spec = load_walk_file(walk_path);
    const double v = have_x ? joint_via_decomposition(spec, n, x, a, ell)
                            : occupation_via_decomposition(spec, n, a, ell);
    std::printf("%.17g\n", v);
    return 0;
}

int cmd_asymptotic(const std::string& fn, const std::vector<double>& args) {
    const auto need = [&](std::size_t k) {
        if (args.size() != k)
            throw ConfigError("asymptotic: `" + fn + "` takes " + std::to_string(k) +
                              " arguments, got " + std::to_string(args.size()));
    };
    double v = 0.0;
    if (fn == "phi") { need(4); v = phi(args[0], args[1], args[2], args[3]); }
    else if (fn == "psi") { need(3); v = psi(args[0], args[1], args[2]); }
    else if (fn == "gaussian_density") { need(2); v = gaussian_density(args[0], args[1]); }
    else if (fn == "rayleigh_two_sided") { need(2); v = rayleigh_two_sided(args[0], args[1]); }
    else if (fn == "kaigh_hitting_density") { need(3); v = kaigh_hitting_density(args[0], args[1], args[2]); }
    else if (fn == "uchiyama_avoid") { need(4); v = uchiyama_avoid(args[0], args[1], args[2], args[3]); }
    else if (fn == "stable_omega_density") { need(4); v = stable_omega_density(args[0], args[1], args[2], args[3]); }
    else if (fn == "survival_limit") { need(1); v = survival_limit(args[0]); }
    else if (fn == "avoid_prob_limit") { need(3); v = avoid_prob_limit(args[0], args[1], args[2]); }
    else if (fn == "kaigh_tail") { need(2); v = kaigh_tail(args[0], args[1]); }
    else if (fn == "erf") { need(1); v = walkocc::erf(args[0]); }
    else if (fn == "erfc") { need(1); v = walkocc::erfc(args[0]); }
    else throw ConfigError("asymptotic: unknown function `" + fn + "`");
    std::printf("%.17g\n", v);
    return 0;
}

int cmd_study(const std::string& config_path, const std::string& out_csv,
              const std::string& out_svg, bool do_assert) {
    StudyConfig cfg = load_study_config(config_path);
    if (!out_csv.empty()) cfg.out_csv = out_csv;
    if (!out_svg.empty()) cfg.out_svg = out_svg;

    const StudyResult result = run_study(cfg);
    if (!cfg.out_csv.empty()) {
        std::ofstream out(cfg.out_csv, std::ios::binary);
        if (!out) throw ConfigError("cannot open output CSV: " + cfg.out_csv);
        write_rows_csv(out, result.rows);
        out.close();
        if (!cfg.out_svg.empty()) emit_plot(cfg.out_csv, cfg.out_svg);
    } else if (!cfg.out_svg.empty()) {
        throw ConfigError("out_svg requires out_csv");
    }

    for (const auto& [n, sup] : result.sup_errors) {
        if (n >= 0)
            std::printf("%s n=%lld sup_error=%.17g\n", to_string(result.kind),
                        static_cast<long long>(n), sup);
        else
            std::printf("%s sup_error=%.17g\n", to_string(result.kind), sup);
    }
    const ConvergenceCheck check = check_convergence(result);
    std::printf("%s: %s (%s)\n", to_string(result.kind), check.pass ? "pass" : "FAIL",
                check.detail.c_str());
    if (do_assert && !check.pass) return 3;
    return 0;
}

int cmd_mc(const std::string& walk_path, std::int64_t n, std::int64_t a,
           std::int64_t trials, std::uint64_t seed) {
    const WalkSpec spec = load_walk_file(walk_path);
    write_mc_csv(std::cout, estimate_joint(spec, n, a, trials, seed));
    return 0;
}

int cmd_identities() {
    double sup = 0.0;
    std::printf("which,y,z,t,lhs,rhs,abs_error\n");
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
                    sup = std::max(sup, err);
                    std::printf("%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.3e\n", which, y, z,
                                t, c.lhs, c.rhs, err);
                }
            }
        }
    }
    std::printf("sup abs_error = %.3e (%s)\n", sup, sup <= 1e-8 ? "pass" : "FAIL");
    return sup <= 1e-8 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finite-n lattice walk distributions, occupation measures, "
                 "and their local limits"};
    app.require_subcommand(1);

    std::string walk_path, config_path, out_csv, out_svg, fn_name;
    std::int64_t n = 0, a = 0, x = 0, ell = 1, trials = 1000000, oracle_cap = 64;
    std::uint64_t seed = 1;
    bool do_assert = false;
    std::vector<double> fn_args;

    auto* validate = app.add_subcommand("validate", "validate a walk file");
    validate->add_option("--walk", walk_path)->required();

    auto* exact = app.add_subcommand("exact", "exact laws as CSV (marginal, or joint with --a)");
    exact->add_option("--walk", walk_path)->required();
    exact->add_option("--n", n)->required();
    auto* exact_a = exact->add_option("--a", a, "level; emits the joint (x, ell) table");
    exact->add_option("--oracle-cap", oracle_cap, "horizon cap for the joint table");

    auto* decompose = app.add_subcommand("decompose",
                                         "P[S_n=x, L^a_n=ell] (or P[L^a_n=ell] without --x) "
                                         "via the path decomposition");
    decompose->add_option("--walk", walk_path)->required();
    decompose->add_option("--n", n)->required();
    decompose->add_option("--a", a)->required();
    auto* dec_x = decompose->add_option("--x", x);
    decompose->add_option("--ell", ell)->required();

    auto* asymptotic = app.add_subcommand("asymptotic", "evaluate a closed-form limit");
    asymptotic->add_option("--fn", fn_name)->required();
    asymptotic->add_option("--args", fn_args, "numeric arguments in signature order");

    auto* study = app.add_subcommand("study", "run a convergence study from a config file");
    study->add_option("--config", config_path)->required();
    study->add_option("--out-csv", out_csv);
    study->add_option("--out-svg", out_svg);
    study->add_flag("--assert", do_assert, "exit 3 unless the convergence check passes");

    auto* mc = app.add_subcommand("mc", "Monte Carlo joint estimate as CSV");
    mc->add_option("--walk", walk_path)->required();
    mc->add_option("--n", n)->required();
    mc->add_option("--a", a)->required();
    mc->add_option("--trials", trials);
    mc->add_option("--seed", seed);

    app.add_subcommand("identities", "check the two hitting-density integral identities");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(walk_path);
        if (exact->parsed()) return cmd_exact(walk_path, n, exact_a->count() > 0, a, oracle_cap);
        if (decompose->parsed()) return cmd_decompose(walk_path, n, a, dec_x->count() > 0, x, ell);
        if (asymptotic->parsed()) return cmd_asymptotic(fn_name, fn_args);
        if (study->parsed()) return cmd_study(config_path, out_csv, out_svg, do_assert);
        if (mc->parsed()) return cmd_mc(walk_path, n, a, trials, seed);
        if (app.get_subcommand("identities")->parsed()) return cmd_identities();
    } catch (const walkocc::ResourceError& e) {
        std::fprintf(stderr, "resource error: %s\n", e.what());
        return 2;
    } catch (const walkocc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
