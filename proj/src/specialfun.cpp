#include "adsharvest/specialfun.hpp"

#include <cmath>
#include <limits>

#include "adsharvest/common.hpp"

namespace adsh::special {
namespace {

constexpr double two_over_sqrt_pi = 1.1283791670955125738961589031215452;
constexpr double inv_sqrt_pi = 0.56418958354775628694807945156077259;
constexpr double euler_gamma = 0.57721566490153286060651209008240243;
constexpr double eps = std::numeric_limits<double>::epsilon();

// erf(x) = 2/sqrt(pi) e^{-x^2} sum 2^n x^(2n+1)/(2n+1)!!, positive terms
double erf_series(double x) {
    const double x2 = x * x;
    double term = x, sum = x;
    for (int n = 1; n < 500; ++n) {
        term *= 2.0 * x2 / (2 * n + 1);
        sum += term;
        if (term < eps * 0.25 * sum) break;
    }
    return two_over_sqrt_pi * std::exp(-x2) * sum;
}

// modified Lentz for x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))
double erfc_cf(double x) {
    constexpr double tiny = 1e-300;
    double f = x, c = x, d = 0.0;
    for (int n = 1; n < 5000; ++n) {
        const double an = 0.5 * n;
        d = x + an * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < eps) break;
    }
    return inv_sqrt_pi * std::exp(-x * x) / f;
}

double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (double(k) * k);
        sum += term;
        if (term < eps * 0.25 * sum) break;
    }
    return sum;
}

// e^{-x} I0(x) ~ (2 pi x)^{-1/2} sum ((2k-1)!!)^2 / (k! 8^k x^k)
double i0_asymptotic_scaled(double x) {
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < eps * 0.25 * sum) break;
    }
    return sum / std::sqrt(2.0 * pi * x);
}

double k0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, harmonic = 0.0, i0 = 1.0, tail = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (double(k) * k);
        harmonic += 1.0 / k;
        i0 += term;
        tail += term * harmonic;
        if (term * harmonic < eps * 0.1 * std::abs(tail) && term < eps * 0.1 * i0) break;
    }
    return -(std::log(0.5 * x) + euler_gamma) * i0 + tail;
}

// Steed/Temme continued fraction, order zero; returns e^x K0(x)
double k0_cf_scaled(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double delh = d, h = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 20000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps * 0.5) break;
    }
    return std::sqrt(pi / (2.0 * x)) / s;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    double r;
    if (ax < erf_series_limit) r = erf_series(ax);
    else if (ax > 27.0) r = 1.0;
    else r = 1.0 - erfc_cf(ax);
    return x < 0 ? -r : r;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0) return 1.0 + erf(-x);
    if (x < erf_series_limit) return 1.0 - erf_series(x);
    if (x > 27.3) return 0.0;
    return erfc_cf(x);
}

double bessel_i0(double x) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bessel_i0 requires x >= 0");
    if (x <= i0_series_limit) return i0_series(x);
    return std::exp(x) * i0_asymptotic_scaled(x);
}

double bessel_i0_scaled(double x) {
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidArgument, "bessel_i0_scaled requires x >= 0");
    if (x <= i0_series_limit) return std::exp(-x) * i0_series(x);
    return i0_asymptotic_scaled(x);
}

double bessel_k0(double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "bessel_k0 requires x > 0");
    if (x <= k0_series_limit) return k0_series(x);
    return std::exp(-x) * k0_cf_scaled(x);
}

double bessel_k0_scaled(double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "bessel_k0_scaled requires x > 0");
    if (x <= k0_series_limit) return std::exp(x) * k0_series(x);
    return k0_cf_scaled(x);
}

}  // namespace adsh::special
