#include "adsharvest/core_circular.hpp"

#include <cmath>

#include "branch_integral.hpp"

namespace adsh {
namespace {

constexpr double sqrt_pi = 1.77245385090551602729816748334114518;
// 1/(2 sqrt(2 pi))
constexpr double x_prefactor = 0.19947114020071633896997302996719657;

}  // namespace

void CircularPair::validate() const {
    if (!std::isfinite(gap_omega_sigma)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    if (!std::isfinite(t0_over_sigma)) throw Error(ErrorCode::InvalidArgument, "time delay must be finite");
}

double CircularKernelParams::theta_minus(int n) const {
    return std::max(0.0, (pi - zero_minus) + (2.0 * n - 1.0) * pi);
}
double CircularKernelParams::theta_plus(int n) const {
    return std::max(0.0, (pi - zero_plus) + (2.0 * n - 1.0) * pi);
}

CircularKernelParams circular_kernel_params(const CircularPair& pair) {
    pair.validate();
    const double l = pair.ell.value(), om = pair.gap_omega_sigma, t0 = pair.t0_over_sigma;
    CircularKernelParams k;
    k.a_tilde = l * l / 4.0;
    k.alpha_x = corotating_alpha(pair.r_a, pair.r_b);
    k.k_x = std::sqrt(k.alpha_x) * std::exp(-om * om - t0 * t0 / 4.0);
    k.delta_t = l * t0 / 2.0;
    k.zero_minus = corotating_first_zero(pair.r_a, pair.r_b, -1);
    k.zero_plus = corotating_first_zero(pair.r_a, pair.r_b, +1);
    return k;
}

TransitionParts transition_parts_circular(double gap, AdsLength ell, const Tolerance& tol) {
    return transition_parts_static(StaticDetector{gap, RadialPosition::origin()}, ell, tol);
}

Estimate<double> transition_probability_circular(double gap, AdsLength ell, BoundaryCondition zeta,
                                                 const Tolerance& tol) {
    return transition_parts_circular(gap, ell, tol).combine(zeta);
}

Estimate<double> transition_probability_circular_direct(double gap, AdsLength ell, BoundaryCondition zeta,
                                                        const Tolerance& tol) {
    tol.validate();
    const double l = ell.value();
    const double a = l * l / 4.0, beta = l * gap;
    Tolerance t = tol;
    t.rel = std::min(tol.rel, 1e-13);
    auto sin_num = [&](double y) { return std::exp(-a * y * y) * std::sin(beta * y); };
    auto cos_num = [&](double y) { return std::exp(-a * y * y) * std::cos(beta * y); };
    // poles of 1/sin(y/2) at 2 pi n, of 1/cos(y/2) at (2n+1) pi
    const auto pv1 = require_converged(pv_periodic_poles(sin_num, 2.0 * pi, 0.0, a, 0.0, t), "circular sin PV");
    auto pv2 = require_converged(pv_periodic_poles(cos_num, 2.0 * pi, pi, a, 0.0, t), "circular cos PV");
    const double pv_cos = -pv2.value;
    const auto c1 = detail::comb_even(a, beta, t.abs);
    const auto c2 = detail::comb_odd(a, beta, t.abs);
    const double z = zeta_value(zeta);
    const double pref = 1.0 / (4.0 * sqrt_pi);
    Estimate<double> out;
    out.value = pref * (-pv1.value + pi * c1.value - z * (pv_cos - pi * c2.value));
    out.error = pref * (pv1.abs_error + pi * c1.error + std::abs(z) * (pv2.abs_error + pi * c2.error));
    return out;
}

namespace {

MatrixElementParts circular_x_once(const CircularKernelParams& k, const Tolerance& tol, const SegmentOptions& seg) {
    const double a = k.a_tilde;
    const double ystar = k.delta_t / (2.0 * a);
    // exp(-t0^2/4) = exp(-Delta^2/4a) moved into the integrand
    const double k_fold = k.k_x * std::exp(k.delta_t * k.delta_t / (4.0 * a));
    auto g = [&](double y) {
        const double u = y - ystar, v = y + ystar;
        return 0.5 * (std::exp(-a * u * u) + std::exp(-a * v * v));
    };
    const double y_max = std::abs(ystar) + std::sqrt((std::log(1.0 / tol.abs) + 7.0) / a);
    detail::BranchOptions opt;
    opt.split_at_extrema = seg.split_at_extrema;
    const auto im = require_converged(detail::branch_integral(k.zero_minus, y_max, g, tol, opt),
                                      "circular matrix element, transparent term");
    const auto ip = require_converged(detail::branch_integral(k.zero_plus, y_max, g, tol, opt),
                                      "circular matrix element, boundary term");
    const double pref = -k_fold * x_prefactor;
    MatrixElementParts out;
    out.transparent = {pref * im.value, std::abs(pref) * im.abs_error};
    out.boundary = {pref * ip.value, std::abs(pref) * ip.abs_error};
    return out;
}

}  // namespace

MatrixElementParts matrix_element_parts_circular(const CircularPair& pair, const Tolerance& tol,
                                                 const SegmentOptions& seg) {
    tol.validate();
    pair.validate();
    if (pair.r_a.r_over_ell() == pair.r_b.r_over_ell())
        throw Error(ErrorCode::DegenerateConfiguration,
                    "coincident detectors: the matrix element diverges logarithmically");
    const auto k = circular_kernel_params(pair);
    auto parts = circular_x_once(k, tol, seg);
    double mag = std::numeric_limits<double>::infinity();
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Transparent, BoundaryCondition::Neumann})
        mag = std::min(mag, std::abs(parts.combine(bc).value));
    if (parts.transparent.error + parts.boundary.error > tol.target(mag)) {
        Tolerance t = tol;
        t.rel = 1e-16;
        t.abs = std::max(0.1 * tol.target(mag), 1e-300);
        parts = circular_x_once(k, t, seg);
    }
    return parts;
}

Estimate<cplx> matrix_element_x_circular(const CircularPair& pair, const Tolerance& tol) {
    return matrix_element_parts_circular(pair, tol).combine(pair.zeta);
}

}  // namespace adsh
