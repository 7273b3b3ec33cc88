#pragma once

// Detectors on co-rotating circular geodesics about the origin, angular
// velocity 1/ell in coordinate time; proper time equals coordinate time.

#include "adsharvest/core_static.hpp"

namespace adsh {

struct CircularPair {
    RadialPosition r_a;
    RadialPosition r_b;
    double gap_omega_sigma = 0.0;
    double t0_over_sigma = 0.0;
    AdsLength ell{1.0};
    BoundaryCondition zeta = BoundaryCondition::Transparent;

    void validate() const;
};

struct CircularKernelParams {
    double a_tilde = 0.0;   // ell^2 / 4
    double k_x = 0.0;       // sqrt(alpha~) exp(-Omega^2 - t0^2/4)
    double delta_t = 0.0;   // ell t0 / 2
    double alpha_x = 0.0;   // 1/cosh(d/ell)
    double zero_minus = 0.0;  // first zero of cos y - alpha~
    double zero_plus = 0.0;   // first zero of cos y + alpha~

    double theta_minus(int n) const;
    double theta_plus(int n) const;
};

CircularKernelParams circular_kernel_params(const CircularPair& pair);

/// Dispatches to the static evaluator at the origin.
TransitionParts transition_parts_circular(double gap, AdsLength ell, const Tolerance& tol);
Estimate<double> transition_probability_circular(double gap, AdsLength ell, BoundaryCondition zeta,
                                                 const Tolerance& tol);

/// Independent assembly of the circular transition probability from its
/// own two principal values and two delta combs.
Estimate<double> transition_probability_circular_direct(double gap, AdsLength ell, BoundaryCondition zeta,
                                                        const Tolerance& tol);

MatrixElementParts matrix_element_parts_circular(const CircularPair& pair, const Tolerance& tol,
                                                 const SegmentOptions& seg = {});
Estimate<cplx> matrix_element_x_circular(const CircularPair& pair, const Tolerance& tol);

}  // namespace adsh
