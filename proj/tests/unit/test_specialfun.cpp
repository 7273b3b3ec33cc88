#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"

#include "adsharvest/specialfun.hpp"

using namespace adsh;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {

double rel(double got, const big& want) {
    const big w = abs(want);
    if (w == 0) return std::abs(got);
    return static_cast<double>(abs(big(got) - want) / w);
}

}  // namespace

TEST_CASE("erf and erfc against 50-digit references") {
    double worst = 0.0, worst_c = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = -6.0 + 12.0 * i / 99.0;
        worst = std::max(worst, rel(special::erf(x), boost::math::erf(big(x))));
        if (x < 26.0) worst_c = std::max(worst_c, rel(special::erfc(x), boost::math::erfc(big(x))));
    }
    CHECK(worst < 1e-14);
    CHECK(worst_c < 1e-13);
    for (int i = 0; i < 100; ++i) {
        const double x = 0.25 * i;
        CHECK(rel(special::erfc(x), boost::math::erfc(big(x))) < 1e-13);
    }
    CHECK(special::erf(0.0) == 0.0);
    CHECK(special::erf(-1.5) == -special::erf(1.5));
}

TEST_CASE("I0 against 50-digit references") {
    double worst = 0.0, worst_s = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = 0.5 * i;
        const big ref = boost::math::cyl_bessel_i(0, big(x));
        worst = std::max(worst, rel(special::bessel_i0(x), ref));
        worst_s = std::max(worst_s, rel(special::bessel_i0_scaled(x), ref * exp(big(-x))));
    }
    CHECK(worst < 1e-14);
    CHECK(worst_s < 1e-14);
    CHECK(special::bessel_i0(0.0) == 1.0);
    CHECK(std::isfinite(special::bessel_i0_scaled(1e6)));
}

TEST_CASE("K0 against 50-digit references") {
    double worst = 0.0, worst_s = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double x = 0.01 * std::pow(1.08, i);
        const big ref = boost::math::cyl_bessel_k(0, big(x));
        worst = std::max(worst, rel(special::bessel_k0(x), ref));
        worst_s = std::max(worst_s, rel(special::bessel_k0_scaled(x), ref * exp(big(x))));
    }
    CHECK(worst < 1e-14);
    CHECK(worst_s < 1e-14);
}

TEST_CASE("regime switch points are continuous") {
    for (double x : {special::erf_series_limit, special::i0_series_limit, special::k0_series_limit}) {
        const double lo = std::nextafter(x, 0.0), hi = std::nextafter(x, 1e300);
        CHECK(special::erf(lo) == doctest::Approx(special::erf(hi)).epsilon(1e-14));
        CHECK(special::bessel_i0(lo) == doctest::Approx(special::bessel_i0(hi)).epsilon(1e-14));
        CHECK(special::bessel_k0(lo) == doctest::Approx(special::bessel_k0(hi)).epsilon(1e-14));
    }
}
