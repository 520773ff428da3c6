#pragma once

#include <functional>

#include "walkocc/errors.hpp"

namespace walkocc {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_intervals = 4096;
};

/// Adaptive bisection with a Gauss-7 / Kronrod-15 panel rule.
///
/// The panel error budget is distributed proportionally to panel width;
/// exceeding max_intervals raises QuadratureError. Integrable endpoint
/// singularities should be removed by substitution before calling (see
/// integral_identity_check for the u^{-3/2} e^{-c/u} treatments).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts = {});

} // namespace walkocc
