#pragma once

// Direct evaluation of the defining double integrals for P, X and C from
// the Wightman function, with an explicit regulator Delta t -> Delta t - i eps
// and extrapolation eps -> 0.
//
// Two integration paths are offered.  `Deformed` moves the relative-time
// integral onto a contour in the lower half plane, where the regulated
// Wightman function is analytic; the limit eps -> 0 is then smooth.
// `RealAxis` keeps real times and resolves the near-singular light-cone
// peaks directly; it is slower and far less accurate and serves as a
// cross-check of the contour path.

#include <vector>

#include "adsharvest/core_circular.hpp"

namespace adsh {

enum class FieldMode { Ads, Flat };
enum class ContourMode { Deformed, RealAxis };
enum class TrajectoryKind { Static, Circular };

struct WightmanEvaluator {
    AdsLength ell{1.0};
    BoundaryCondition zeta = BoundaryCondition::Transparent;
    double epsilon = 1e-6;  // units of ell in AdS mode, of sigma in flat mode
    FieldMode mode = FieldMode::Ads;

    void validate() const;
};

/// (t, R, phi) in the static chart; t and phi may be complex.
struct SpacetimePoint {
    cplx t;
    double radius_over_sigma = 0.0;
    cplx phi;
};

cplx wightman(const SpacetimePoint& x, const SpacetimePoint& xp, const WightmanEvaluator& ev);

struct OracleTrajectory {
    TrajectoryKind kind = TrajectoryKind::Static;
    double radius_over_sigma = 0.0;

    /// dtau/dt: gamma for static detectors in AdS, 1 otherwise
    double clock_rate(const WightmanEvaluator& ev) const;
    SpacetimePoint at(cplx t, const WightmanEvaluator& ev) const;
};

struct OracleDetector {
    OracleTrajectory trajectory;
    double center = 0.0;  // coordinate time at which the switching peaks
};

struct OraclePair {
    OracleDetector a;
    OracleDetector b;
    double gap = 0.0;
};

struct OracleGrid {
    ContourMode contour = ContourMode::Deformed;
    std::vector<double> epsilons;  // empty selects the mode's default sequence
    double rel_tol = 1e-10;
    int max_refinements = 7;
    bool concurrent = true;

    std::vector<double> epsilon_sequence() const;
};

template <class T>
struct OracleEstimate {
    T value{};
    double error = 0.0;
    double fit_residual = 0.0;
    std::vector<double> epsilons;
    std::vector<T> samples;
};

OracleEstimate<double> oracle_transition_probability(double gap, const OracleTrajectory& traj,
                                                     const WightmanEvaluator& ev, const OracleGrid& grid = {});
OracleEstimate<cplx> oracle_matrix_element_x(const OraclePair& pair, const WightmanEvaluator& ev,
                                             const OracleGrid& grid = {});
OracleEstimate<cplx> oracle_matrix_element_c(const OraclePair& pair, const WightmanEvaluator& ev,
                                             const OracleGrid& grid = {});

/// Regulator dependence assumed by the extrapolation.  On a deformed
/// contour the integral is analytic in eps; on the real axis the light-cone
/// peaks leave a sqrt(eps) term.
enum class EpsilonModel { Analytic, SquareRoot };

/// least-squares fit of v0 + c1 eps + c2 eps^2 (Analytic) or
/// v0 + c1 sqrt(eps) + c2 eps (SquareRoot); returns v0 and the rms residual
template <class T>
OracleEstimate<T> extrapolate_epsilon(const std::vector<double>& eps, const std::vector<T>& values,
                                      const std::vector<double>& quad_errors,
                                      EpsilonModel model = EpsilonModel::Analytic);

// conversions from the core configuration types
OraclePair oracle_pair(const StaticPair& pair);
OraclePair oracle_pair(const CircularPair& pair);
OracleTrajectory oracle_trajectory(const StaticDetector& det, AdsLength ell);

}  // namespace adsh
