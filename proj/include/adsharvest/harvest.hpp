#pragma once

// Concurrence of the two-detector state at leading order, and the single
// "evaluate this pair" entry point.

#include "adsharvest/core_circular.hpp"

namespace adsh {

enum class TrajectoryType { Static, Circular };

std::string_view to_string(TrajectoryType t) noexcept;

struct PairConfig {
    TrajectoryType kind = TrajectoryType::Static;
    double gap_omega_sigma = 0.0;
    AdsLength ell{1.0};
    double t0_over_sigma = 0.0;
    BoundaryCondition zeta = BoundaryCondition::Transparent;
    RadialPosition position_a;
    RadialPosition position_b;

    /// A at proper distance d_origin from the origin, B a further `separation` out along the same ray.
    static PairConfig from_distances(TrajectoryType kind, double gap, AdsLength ell, double d_origin,
                                     double separation, double t0, BoundaryCondition zeta);

    double separation() const;
    double d_origin() const;

    StaticPair static_pair() const;
    CircularPair circular_pair() const;
};

/// 0: |X| above sqrt(PA PB) by more than the error, 1: clamped to zero,
/// 2: zero or positive within the error
enum class ClampFlag : int { Entangled = 0, Clamped = 1, Marginal = 2 };

struct HarvestResult {
    double p_a = 0.0;
    double p_b = 0.0;
    cplx x;
    double concurrence = 0.0;
    double err_p_a = 0.0;
    double err_p_b = 0.0;
    double err_x = 0.0;
    double err_concurrence = 0.0;
    ClampFlag clamp = ClampFlag::Clamped;
};

/// 2 max(0, |x| - sqrt(pa pb)); rejects negative probabilities
double concurrence(double p_a, double p_b, cplx x);

HarvestResult assemble(const Estimate<double>& p_a, const Estimate<double>& p_b, const Estimate<cplx>& x);

/// zeta-independent pieces; combine() gives the result for any boundary condition
struct HarvestParts {
    TransitionParts p_a;
    TransitionParts p_b;
    MatrixElementParts x;

    HarvestResult combine(BoundaryCondition bc) const;
};

HarvestParts evaluate_pair_parts(const PairConfig& cfg, const Tolerance& tol);

HarvestResult evaluate_pair(const PairConfig& cfg, const Tolerance& tol);
HarvestResult evaluate_pair(const StaticPair& pair, const Tolerance& tol);
HarvestResult evaluate_pair(const CircularPair& pair, const Tolerance& tol);

}  // namespace adsh
