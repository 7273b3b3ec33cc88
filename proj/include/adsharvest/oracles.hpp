#pragma once

// Closed-form references: (2+1)-dimensional Minkowski space and the
// large-ell expansion of the static transition probability.

#include "adsharvest/common.hpp"

namespace adsh {

struct FlatPairConfig {
    double gap_omega_sigma = 0.0;
    double separation_d_over_sigma = 1.0;
};

double flat_transition_probability(double gap);

cplx flat_matrix_element_x(const FlatPairConfig& cfg);

/// Flat-space concurrence of two identical detectors at separation d.
double flat_concurrence(const FlatPairConfig& cfg);

inline constexpr double perturbative_min_ell = 10.0;

/// Partial sum through (sigma/ell)^order, order <= 4.
double perturbative_transition_probability(double gap, double ell_over_sigma, BoundaryCondition zeta,
                                           double d_origin_over_sigma, int order);

}  // namespace adsh
