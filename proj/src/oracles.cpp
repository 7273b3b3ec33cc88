#include "adsharvest/oracles.hpp"

#include <cmath>

#include "adsharvest/specialfun.hpp"

namespace adsh {
namespace {
constexpr double sqrt_pi = 1.77245385090551602729816748334114518;
}

double flat_transition_probability(double gap) {
    if (!std::isfinite(gap)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    return sqrt_pi / 4.0 * special::erfc(gap);
}

cplx flat_matrix_element_x(const FlatPairConfig& cfg) {
    const double d = cfg.separation_d_over_sigma, om = cfg.gap_omega_sigma;
    if (!(d > 0.0) || !std::isfinite(d))
        throw Error(ErrorCode::InvalidArgument, "flat matrix element requires a positive separation");
    if (!std::isfinite(om)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    const double z = d * d / 8.0;
    const double damp = std::exp(-om * om);
    // e^{-z} I0(z) and e^{-z} K0(z), the latter via the e^{x} K0 scaling
    const double i0 = special::bessel_i0_scaled(z);
    const double k0 = special::bessel_k0_scaled(z) * std::exp(-2.0 * z);
    return -damp / (4.0 * sqrt_pi) * cplx(pi * i0, -k0);
}

double flat_concurrence(const FlatPairConfig& cfg) {
    const double p = flat_transition_probability(cfg.gap_omega_sigma);
    return 2.0 * std::max(0.0, std::abs(flat_matrix_element_x(cfg)) - p);
}

double perturbative_transition_probability(double gap, double ell_over_sigma, BoundaryCondition zeta,
                                           double d_origin_over_sigma, int order) {
    if (order < 0 || order > 4) throw Error(ErrorCode::InvalidArgument, "perturbative order must lie in [0, 4]");
    if (!(ell_over_sigma >= perturbative_min_ell))
        throw Error(ErrorCode::InvalidArgument, "perturbative series is only used for ell/sigma >= 10");
    if (!(d_origin_over_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "distance from origin must be >= 0");
    const double z = zeta_value(zeta);
    const double e = std::exp(-gap * gap);
    const double x = 1.0 / ell_over_sigma;
    const double d2 = d_origin_over_sigma * d_origin_over_sigma;
    const double om2 = gap * gap;
    const double terms[5] = {
        flat_transition_probability(gap),
        -z * e / 4.0 * x,
        -gap * e / 24.0 * x * x,
        -z * e * (1.0 - 2.0 * om2) / 16.0 * x * x * x,
        gap * e / 2880.0 * (120.0 * d2 + 14.0 * om2 - 21.0) * x * x * x * x,
    };
    double sum = 0.0;
    for (int k = 0; k <= order; ++k) sum += terms[k];
    return sum;
}

}  // namespace adsh
