#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "walkocc/errors.hpp"
#include "walkocc/walk_model.hpp"

namespace walkocc {

/// The convergence experiments. Each kind pairs an exact finite-n quantity
/// with its closed-form limit and reports the per-n sup error over a regime
/// grid:
///   main1      n P[S_n=x, Lambda^a_n=ell]   vs phi
///   main2      sqrt(n) P[Lambda^a_n=ell]    vs psi
///   kaigh      n P[tau_a=n]                 vs kaigh_hitting_density
///   uchiyama   sqrt(n) P[S_n=x, Lambda=0]   vs reflected Gaussian difference
///   omega      n P[Omega_{ell-1}=m]         vs stable_omega_density, sup over m <= n
///   survival   sqrt(n) P[tau_0>n]           vs survival_limit
///   tails      P[Lambda^a_n=0]              vs erf(|a|/sqrt(2 nu n))
///   identities quadrature lhs               vs closed-form rhs (no n sweep)
///   gnedenko   sqrt(n) P[S_n=x]             vs Gaussian density, sup over x
///   mc-check   empirical joint law          vs DP oracle (4-sigma cell coverage)
enum class StudyKind {
    kMain1, kMain2, kKaigh, kUchiyama, kOmega,
    kSurvival, kTails, kIdentities, kGnedenko, kMcCheck,
};

const char* to_string(StudyKind kind);
StudyKind parse_study_kind(const std::string& name); // ConfigError on unknown

/// Scaled-coordinate grids. Every value must be 0 or at least kappa in
/// absolute value, matching the uniformity regimes of the limit theorems.
struct RegimeGrid {
    double kappa = 0.5;
    std::vector<double> alpha_grid;  // a / sqrt(n)
    std::vector<double> xi_grid;     // (x - a) / sqrt(n), signed
    std::vector<double> lambda_grid; // ell / sqrt(n)
};

struct StudyConfig {
    std::string walk;                // walk file path (optional when a WalkSpec is passed)
    StudyKind kind = StudyKind::kMain1;
    std::vector<std::int64_t> n_grid; // strictly increasing; empty -> kind default
    RegimeGrid regime;                // empty grids -> kind defaults
    std::string out_csv;
    std::string out_svg;
    std::uint64_t seed = 1;
    std::int64_t trials = 1000000;   // mc-check only
};

/// Parses `key = value` lines under [study] / [regime] sections.
StudyConfig load_study_config(const std::string& path);

/// One evaluated grid point. Integer fields are -1 where a kind does not use
/// them; abs_error = |exact * scale - asymptotic| with the kind's prefactor
/// (n, sqrt(n) or 1). alpha/xi/lambda carry the realized scaled coordinates
/// (for identities rows they carry y, z, t instead).
struct StudyRow {
    StudyKind kind = StudyKind::kMain1;
    std::int64_t n = -1;
    std::int64_t a = -1;
    std::int64_t x = -1;
    std::int64_t ell = -1;
    double exact = 0.0;
    double asymptotic = 0.0;
    double abs_error = 0.0;
    double alpha = 0.0;
    double xi = 0.0;
    double lambda = 0.0;
};

struct StudyResult {
    StudyKind kind = StudyKind::kMain1;
    std::vector<StudyRow> rows;
    /// Per-n sup of abs_error over the regime grid, ordered by n.
    std::vector<std::pair<std::int64_t, double>> sup_errors;
};

/// Runs the configured study. Grid points are independent work items executed
/// on a bounded pool (workers <= 0 uses the hardware count); rows come back
/// ordered by (n, a, x, ell) regardless of scheduling.
StudyResult run_study(const StudyConfig& config, const WalkSpec& spec, int workers = 0);

/// Convenience overload; loads the walk from config.walk.
StudyResult run_study(const StudyConfig& config, int workers = 0);

/// CSV with header `kind,n,a,x,ell,exact,asymptotic,abs_error,alpha,xi,lambda`
/// and 17 significant digits.
void write_rows_csv(std::ostream& out, const std::vector<StudyRow>& rows);
std::vector<StudyRow> read_rows_csv(const std::string& path); // ParseError

/// The pass/fail rule behind `study --assert`, per kind:
/// limit-theorem kinds need the per-n sup error nonincreasing within 5% slack
/// and e(n_max) <= e(n_min)/2; survival needs a decreasing error sequence
/// ending <= 0.02; identities needs sup <= 1e-8; mc-check needs >= 99% cell
/// coverage at every n.
struct ConvergenceCheck {
    bool pass = false;
    std::string detail;
};
ConvergenceCheck check_convergence(const StudyResult& result);

/// Log-log plot of per-n sup error vs n, one polyline per study kind found in
/// the CSV. Deterministic bytes for fixed input. ParseError on malformed CSV
/// or fewer than two distinct n values.
void emit_plot(const std::string& rows_csv_path, const std::string& out_svg_path);

} // namespace walkocc
