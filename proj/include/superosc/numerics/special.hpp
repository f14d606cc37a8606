#pragma once

namespace superosc::numerics {

/// Airy function Ai(x). Maclaurin series (extended precision) on
/// [-10, 6], asymptotic expansions outside. Absolute error below 1e-12
/// on [-15, 10].
double airy_ai(double x);

/// Real cube root that keeps the sign of x.
double signed_cbrt(double x);

}  // namespace superosc::numerics
