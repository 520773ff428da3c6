#include "walkocc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace walkocc {

namespace {

// Kronrod-15 abscissae on [0,1) plus center; odd positions extend Gauss-7.
const double kXgk[7] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898};
const double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

// Returns (kronrod estimate, |kronrod - gauss|) on [a, b].
std::pair<double, double> gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        k15 += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) g7 += kWg[(j - 1) / 2] * (f1 + f2);
    }
    return {k15 * h, std::fabs(k15 - g7) * h};
}

} // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureOptions& opts) {
    if (!(hi > lo)) return 0.0;
    const double total_width = hi - lo;
    std::vector<std::pair<double, double>> stack{{lo, hi}};
    double total = 0.0;
    int used = 0;
    while (!stack.empty()) {
        const auto [a, b] = stack.back();
        stack.pop_back();
        const auto [v, err] = gk15(f, a, b);
        const double budget = opts.abs_tol * (b - a) / total_width;
        const double width_floor = 1e-14 * std::max({std::fabs(a), std::fabs(b), 1.0});
        if (err <= budget || (b - a) <= width_floor) {
            total += v;
            continue;
        }
        if (++used > opts.max_intervals)
            throw QuadratureError("adaptive quadrature exceeded " +
                                  std::to_string(opts.max_intervals) + " intervals");
        const double mid = 0.5 * (a + b);
        stack.emplace_back(a, mid);
        stack.emplace_back(mid, b);
    }
    return total;
}

} // namespace walkocc
