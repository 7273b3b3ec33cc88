#pragma once

// Static detectors on a common radial ray with Gaussian switching.
// All results are per lambda~^2 = lambda^2 sigma.

#include <array>
#include <optional>
#include <vector>

#include "adsharvest/geometry.hpp"
#include "adsharvest/quadrature.hpp"

namespace adsh {

struct StaticDetector {
    double gap_omega_sigma = 0.0;
    RadialPosition position;

    RedshiftFactor gamma() const { return redshift(position); }
};

struct StaticPair {
    StaticDetector detector_a;
    StaticDetector detector_b;
    double t0_over_sigma = 0.0;
    AdsLength ell{1.0};
    BoundaryCondition zeta = BoundaryCondition::Transparent;

    void validate() const;
};

struct DetectorKernelParams {
    double a = 0.0;      // gamma^2 ell^2 / 4
    double beta = 0.0;   // gamma ell Omega
    double alpha_plus = 0.0;
    double alpha_minus = -1.0;
    double zero_plus = 0.0;  // first zero of cos y + alpha_plus, pi at the origin
    bool at_origin = false;

    /// theta_n = max(0, arccos(alpha_plus) + (2n-1) pi)
    double theta(int n) const;
};

struct PairKernelParams {
    cplx k_x;
    double a_x = 0.0;
    double delta_t = 0.0;
    double beta_x = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double zero_plus = 0.0;
    double zero_minus = 0.0;

    double theta_plus(int n) const;
    double theta_minus(int n) const;
};

struct StaticKernelParams {
    DetectorKernelParams detector_a;
    DetectorKernelParams detector_b;
    PairKernelParams x;
};

DetectorKernelParams detector_kernel_params(const StaticDetector& det, AdsLength ell);
PairKernelParams pair_kernel_params(const StaticPair& pair);
StaticKernelParams static_kernel_params(const StaticPair& pair);

/// below this Theta+ = arccos(alpha_plus) the detector is treated as sitting at the origin
inline constexpr double origin_theta_threshold = 1e-7;

/// P = transparent - zeta * boundary
struct TransitionParts {
    Estimate<double> transparent;
    Estimate<double> boundary;
    /// origin only: even and odd normal-mode sums, each over 2 ell, so that
    /// combine() never subtracts
    std::optional<std::array<double, 2>> modes;

    Estimate<double> combine(BoundaryCondition bc) const;
};

/// X = transparent - zeta * boundary
struct MatrixElementParts {
    Estimate<cplx> transparent;
    Estimate<cplx> boundary;

    Estimate<cplx> combine(BoundaryCondition bc) const;
};

struct SegmentOptions {
    bool split_at_extrema = false;
};

TransitionParts transition_parts_static(const StaticDetector& det, AdsLength ell, const Tolerance& tol);

/// Principal-value and delta-comb form on every branch, including the origin.
TransitionParts transition_parts_static_pv(const StaticDetector& det, AdsLength ell, const Tolerance& tol);

/// Detector at the origin: sum over the normal-mode frequencies (k + 1/2)/ell,
/// k even carrying 1 - zeta and k odd 1 + zeta.  All terms are positive.
TransitionParts origin_mode_parts(double gap, AdsLength ell);

Estimate<double> transition_probability_static(const StaticDetector& det, AdsLength ell, BoundaryCondition zeta,
                                               const Tolerance& tol);

MatrixElementParts matrix_element_parts_static(const StaticPair& pair, const Tolerance& tol,
                                               const SegmentOptions& seg = {});

Estimate<cplx> matrix_element_x_static(const StaticPair& pair, const Tolerance& tol);

namespace detail {
/// sum_{n in Z} (-1)^n cos(2 n pi beta) e^{-4 n^2 pi^2 a}
Estimate<double> comb_even(double a, double beta, double abs_tol);
/// sum_{n in Z} (-1)^n sin((2n+1) pi beta) e^{-a pi^2 (2n+1)^2}
Estimate<double> comb_odd(double a, double beta, double abs_tol);
}  // namespace detail

}  // namespace adsh
