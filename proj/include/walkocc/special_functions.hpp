#pragma once

namespace walkocc {

/// Error function, |absolute error| <= 1e-13 on the real line.
///
/// |x| <= 3 uses the scaled Maclaurin series
///     erf(x) = (2 x e^{-x^2}/sqrt(pi)) sum_k (2x^2)^k / (2k+1)!!
/// whose terms are all positive (no cancellation); |x| > 3 uses the
/// continued fraction for erfc evaluated by the modified Lentz scheme.
/// erfc(x) is defined as 1 - erf(x) wherever the series is the primary
/// evaluation and by the continued fraction itself for x > 3, so the
/// complement identity holds by construction.
double erf(double x);
double erfc(double x);

} // namespace walkocc
