#pragma once

// erf, I0 and K0 for real arguments.  Independent of the platform libm
// special functions so that results are identical across toolchains.

namespace adsh::special {

double erf(double x);
double erfc(double x);

/// I0(x), x >= 0
double bessel_i0(double x);
/// exp(-x) I0(x), x >= 0; finite for all x
double bessel_i0_scaled(double x);

/// K0(x), x > 0
double bessel_k0(double x);
/// exp(x) K0(x), x > 0
double bessel_k0_scaled(double x);

// regime switch points
inline constexpr double erf_series_limit = 2.0;
inline constexpr double i0_series_limit = 30.0;
inline constexpr double k0_series_limit = 2.0;

}  // namespace adsh::special
