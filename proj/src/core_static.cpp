#include "adsharvest/core_static.hpp"

#include <cmath>
#include <limits>

#include "branch_integral.hpp"

namespace adsh {
namespace {

constexpr double sqrt2 = 1.41421356237309504880168872420969808;
constexpr double sqrt_pi = 1.77245385090551602729816748334114518;
// 1/(2 sqrt(2 pi))
constexpr double p_prefactor = 0.19947114020071633896997302996719657;

double log_inv(double abs_tol) { return std::log(1.0 / abs_tol); }

// second pass: absolute target scaled to the assembled result
Tolerance refine_tolerance(const Tolerance& tol, double magnitude) {
    Tolerance t = tol;
    t.rel = 1e-16;
    t.abs = std::max(0.1 * tol.target(magnitude), 1e-300);
    t.max_levels = std::max(tol.max_levels, 12);
    return t;
}

// PV int_0^inf e^{-a y^2} sin(beta y) / sin(y/2) dy
QuadResult<double> pv_sin(double a, double beta, const Tolerance& tol) {
    auto first = tanh_sinh(
        [&](double y) {
            const double e = std::exp(-a * y * y);
            if (y < 1e-4 && std::abs(beta) * y < 1e-4) {
                const double y2 = y * y;
                return e * 2.0 * beta * (1.0 - beta * beta * y2 / 6.0 + y2 / 24.0);
            }
            return e * std::sin(beta * y) / std::sin(0.5 * y);
        },
        0.0, pi, tol);
    auto rest = pv_periodic_poles([&](double y) { return std::exp(-a * y * y) * std::sin(beta * y); }, 2.0 * pi, 0.0,
                                  a, pi, tol);
    first += rest;
    return first;
}

// PV int_0^inf e^{-a y^2} cos(beta y) / cos(y/2) dy; sin((y - pi)/2) = -cos(y/2)
QuadResult<double> pv_cos(double a, double beta, const Tolerance& tol) {
    auto r = pv_periodic_poles([&](double y) { return std::exp(-a * y * y) * std::cos(beta * y); }, 2.0 * pi, pi, a,
                               0.0, tol);
    r.value = -r.value;
    return r;
}

TransitionParts transition_parts_once(const DetectorKernelParams& k, const Tolerance& tol) {
    const double a = k.a, beta = k.beta;
    const auto pv = require_converged(pv_sin(a, beta, tol), "transition probability, sin(y/2) principal value");
    const auto comb = detail::comb_even(a, beta, tol.abs);

    TransitionParts out;
    out.transparent.value = p_prefactor * (-pv.value / sqrt2 + pi / sqrt2 * comb.value);
    out.transparent.error = p_prefactor * (pv.abs_error / sqrt2 + pi / sqrt2 * comb.error);

    if (k.at_origin) {
        const auto pvc = require_converged(pv_cos(a, beta, tol), "transition probability, cos(y/2) principal value");
        const auto c2 = detail::comb_odd(a, beta, tol.abs);
        out.boundary.value = p_prefactor * (pvc.value - pi * c2.value) / sqrt2;
        out.boundary.error = p_prefactor * (pvc.abs_error + pi * c2.error) / sqrt2;
    } else {
        const double y_max = std::sqrt((log_inv(tol.abs) + 7.0) / a);
        detail::BranchOptions opt;
        opt.oscillation = beta;
        const auto b = require_converged(
            detail::branch_integral(
                k.zero_plus, y_max,
                [&](double y) { return std::exp(-a * y * y) * cplx(std::cos(beta * y), -std::sin(beta * y)); }, tol,
                opt),
            "transition probability, boundary term");
        out.boundary.value = p_prefactor * b.value.real();
        out.boundary.error = p_prefactor * b.abs_error;
    }
    return out;
}

template <class Parts>
double smallest_combination(const Parts& p) {
    double m = std::numeric_limits<double>::infinity();
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Transparent, BoundaryCondition::Neumann})
        m = std::min(m, std::abs(p.combine(bc).value));
    return m;
}

template <class Parts>
double largest_error(const Parts& p) {
    return p.transparent.error + p.boundary.error;
}

}  // namespace

namespace detail {

Estimate<double> comb_even(double a, double beta, double abs_tol) {
    Estimate<double> out{1.0, 0.0};
    for (int n = 1;; ++n) {
        const double g = std::exp(-4.0 * n * n * pi * pi * a);
        if (g < 1e-3 * abs_tol) {
            out.error = 2.0 * g;
            break;
        }
        out.value += 2.0 * ((n % 2) ? -1.0 : 1.0) * std::cos(2.0 * pi * n * beta) * g;
    }
    return out;
}

Estimate<double> comb_odd(double a, double beta, double abs_tol) {
    Estimate<double> out{0.0, 0.0};
    for (int n = 0;; ++n) {
        const double k = 2.0 * n + 1.0;
        const double g = std::exp(-a * pi * pi * k * k);
        if (g < 1e-3 * abs_tol) {
            out.error = 2.0 * g;
            break;
        }
        out.value += 2.0 * ((n % 2) ? -1.0 : 1.0) * std::sin(k * pi * beta) * g;
    }
    return out;
}

}  // namespace detail

void StaticPair::validate() const {
    if (detector_a.gap_omega_sigma != detector_b.gap_omega_sigma)
        throw Error(ErrorCode::InvalidArgument, "both detectors must share the same energy gap");
    if (!std::isfinite(detector_a.gap_omega_sigma)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    if (!std::isfinite(t0_over_sigma)) throw Error(ErrorCode::InvalidArgument, "time delay must be finite");
}

double DetectorKernelParams::theta(int n) const {
    return std::max(0.0, (pi - zero_plus) + (2.0 * n - 1.0) * pi);
}

double PairKernelParams::theta_plus(int n) const { return std::max(0.0, (pi - zero_plus) + (2.0 * n - 1.0) * pi); }
double PairKernelParams::theta_minus(int n) const { return std::max(0.0, (pi - zero_minus) + (2.0 * n - 1.0) * pi); }

DetectorKernelParams detector_kernel_params(const StaticDetector& det, AdsLength ell) {
    const double g = det.gamma().gamma;
    const double l = ell.value();
    DetectorKernelParams k;
    k.a = g * g * l * l / 4.0;
    k.beta = g * l * det.gap_omega_sigma;
    k.alpha_plus = static_alpha(det.position, +1);
    k.alpha_minus = static_alpha(det.position, -1);
    k.zero_plus = static_pair_first_zero(det.position, det.position, +1);
    // arccos(alpha_plus) = pi - zero_plus = 2 atan(r/ell)
    k.at_origin = (pi - k.zero_plus) < origin_theta_threshold;
    return k;
}

PairKernelParams pair_kernel_params(const StaticPair& pair) {
    pair.validate();
    const double ga = pair.detector_a.gamma().gamma, gb = pair.detector_b.gamma().gamma;
    const double om = pair.detector_a.gap_omega_sigma, t0 = pair.t0_over_sigma, l = pair.ell.value();
    const double s = ga * ga + gb * gb;
    const double g = ga * ga * gb * gb / s;
    const double sum2 = (ga + gb) * (ga + gb);
    PairKernelParams k;
    k.k_x = std::sqrt(ga * gb / s) * std::exp(cplx(-om * om * sum2 / (2.0 * s) - t0 * t0 * g / 2.0,
                                                   om * t0 * sum2 * (ga - gb) / (2.0 * s)));
    k.a_x = g * l * l / 2.0;
    k.delta_t = -t0 * l * g;
    k.beta_x = ga * gb * (ga - gb) * l * om / s;
    k.alpha_plus = static_pair_alpha(pair.detector_a.position, pair.detector_b.position, +1);
    k.alpha_minus = static_pair_alpha(pair.detector_a.position, pair.detector_b.position, -1);
    k.zero_plus = static_pair_first_zero(pair.detector_a.position, pair.detector_b.position, +1);
    k.zero_minus = static_pair_first_zero(pair.detector_a.position, pair.detector_b.position, -1);
    return k;
}

StaticKernelParams static_kernel_params(const StaticPair& pair) {
    return {detector_kernel_params(pair.detector_a, pair.ell), detector_kernel_params(pair.detector_b, pair.ell),
            pair_kernel_params(pair)};
}

Estimate<double> TransitionParts::combine(BoundaryCondition bc) const {
    const double z = zeta_value(bc);
    if (modes) {
        const double v = (1.0 - z) * (*modes)[0] + (1.0 + z) * (*modes)[1];
        return {v, 8.0 * std::numeric_limits<double>::epsilon() * v};
    }
    return {transparent.value - z * boundary.value, transparent.error + std::abs(z) * boundary.error};
}

Estimate<cplx> MatrixElementParts::combine(BoundaryCondition bc) const {
    const double z = zeta_value(bc);
    return {transparent.value - z * boundary.value, transparent.error + std::abs(z) * boundary.error};
}

TransitionParts origin_mode_parts(double gap, AdsLength ell) {
    if (!std::isfinite(gap)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    const double l = ell.value();
    std::array<double, 2> s{0.0, 0.0};
    for (long k = 0;; ++k) {
        const double w = gap + (static_cast<double>(k) + 0.5) / l;
        if (w > 0.0 && w * w > 750.0) break;
        s[k % 2] += std::exp(-w * w);
    }
    s[0] /= 2.0 * l;
    s[1] /= 2.0 * l;
    const double eps = 8.0 * std::numeric_limits<double>::epsilon();
    TransitionParts out;
    out.transparent = {s[0] + s[1], eps * (s[0] + s[1])};
    out.boundary = {s[0] - s[1], eps * (s[0] + s[1])};
    out.modes = s;
    return out;
}

TransitionParts transition_parts_static(const StaticDetector& det, AdsLength ell, const Tolerance& tol) {
    tol.validate();
    if (!std::isfinite(det.gap_omega_sigma)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    if (detector_kernel_params(det, ell).at_origin) return origin_mode_parts(det.gap_omega_sigma, ell);
    return transition_parts_static_pv(det, ell, tol);
}

TransitionParts transition_parts_static_pv(const StaticDetector& det, AdsLength ell, const Tolerance& tol) {
    tol.validate();
    if (!std::isfinite(det.gap_omega_sigma)) throw Error(ErrorCode::InvalidArgument, "energy gap must be finite");
    const auto k = detector_kernel_params(det, ell);
    auto parts = transition_parts_once(k, tol);
    const double mag = smallest_combination(parts);
    if (largest_error(parts) > tol.target(mag)) parts = transition_parts_once(k, refine_tolerance(tol, mag));
    return parts;
}

Estimate<double> transition_probability_static(const StaticDetector& det, AdsLength ell, BoundaryCondition zeta,
                                               const Tolerance& tol) {
    return transition_parts_static(det, ell, tol).combine(zeta);
}

namespace {

MatrixElementParts x_parts_once(const PairKernelParams& k, const Tolerance& tol, const SegmentOptions& seg) {
    const double a = k.a_x, beta = k.beta_x;
    const double ystar = k.delta_t / (2.0 * a);
    // K_X with the e^{-Delta^2/4a} factor moved into the integrand
    const cplx k_fold = k.k_x * std::exp(k.delta_t * k.delta_t / (4.0 * a));
    auto g = [&](double y) {
        const double u = y - ystar, v = y + ystar;
        const cplx ph(std::cos(beta * y), std::sin(beta * y));
        return 0.5 * (std::exp(-a * u * u) * ph + std::exp(-a * v * v) * std::conj(ph));
    };
    const double y_max = std::abs(ystar) + std::sqrt((log_inv(tol.abs) + 7.0) / a);
    detail::BranchOptions opt;
    opt.split_at_extrema = seg.split_at_extrema;
    opt.oscillation = beta;
    const auto im = require_converged(detail::branch_integral(k.zero_minus, y_max, g, tol, opt),
                                      "matrix element, transparent term");
    const auto ip = require_converged(detail::branch_integral(k.zero_plus, y_max, g, tol, opt),
                                      "matrix element, boundary term");
    const cplx pref = -k_fold / (2.0 * sqrt_pi);
    MatrixElementParts out;
    out.transparent = {pref * im.value, std::abs(pref) * im.abs_error};
    out.boundary = {pref * ip.value, std::abs(pref) * ip.abs_error};
    return out;
}

}  // namespace

MatrixElementParts matrix_element_parts_static(const StaticPair& pair, const Tolerance& tol, const SegmentOptions& seg) {
    tol.validate();
    pair.validate();
    if (pair.detector_a.position.r_over_ell() == pair.detector_b.position.r_over_ell())
        throw Error(ErrorCode::DegenerateConfiguration,
                    "coincident detectors: the matrix element diverges logarithmically");
    const auto k = pair_kernel_params(pair);
    auto parts = x_parts_once(k, tol, seg);
    const double mag = smallest_combination(parts);
    if (largest_error(parts) > tol.target(mag)) parts = x_parts_once(k, refine_tolerance(tol, mag), seg);
    return parts;
}

Estimate<cplx> matrix_element_x_static(const StaticPair& pair, const Tolerance& tol) {
    return matrix_element_parts_static(pair, tol).combine(pair.zeta);
}

}  // namespace adsh
