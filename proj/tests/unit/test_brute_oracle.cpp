#include <cmath>

#include "doctest.h"

#include "adsharvest/brute_oracle.hpp"
#include "adsharvest/harvest.hpp"
#include "adsharvest/oracles.hpp"

using namespace adsh;

namespace {

SpacetimePoint at(double t, double r) { return {cplx(t, 0.0), r, cplx(0.0, 0.0)}; }

}  // namespace

TEST_CASE("flat Wightman function") {
    WightmanEvaluator ev;
    ev.mode = FieldMode::Flat;
    ev.epsilon = 1e-12;
    const cplx w = wightman(at(0.0, 0.0), at(0.0, 2.0), ev);
    CHECK(w.real() == doctest::Approx(1.0 / (8.0 * pi)).epsilon(1e-10));
    CHECK(std::abs(w.imag()) < 1e-10);
    // timelike: purely imaginary up to the regulator
    const cplx wt = wightman(at(0.0, 0.0), at(3.0, 0.0), ev);
    CHECK(std::abs(wt) == doctest::Approx(1.0 / (4.0 * pi * 3.0)).epsilon(1e-10));
    CHECK(std::abs(wt.real()) < 1e-9);
}

TEST_CASE("AdS Wightman function") {
    WightmanEvaluator ev;
    ev.ell = AdsLength(2.0);
    ev.epsilon = 1e-9;
    const SpacetimePoint x = at(0.0, 0.3), y = at(0.7, 1.1);
    ev.zeta = BoundaryCondition::Dirichlet;
    const cplx wd = wightman(x, y, ev);
    ev.zeta = BoundaryCondition::Neumann;
    const cplx wn = wightman(x, y, ev);
    ev.zeta = BoundaryCondition::Transparent;
    const cplx wt = wightman(x, y, ev);
    CHECK(std::abs(wt - 0.5 * (wd + wn)) <= 1e-14 * std::abs(wt));
    // W(x, x')* = W(x', x)
    CHECK(std::abs(std::conj(wightman(x, y, ev)) - wightman(y, x, ev)) <= 1e-12 * std::abs(wt));
    const cplx wtl = wightman(at(0.0, 0.3), at(2.5, 0.3), ev);
    CHECK(std::abs(std::conj(wtl) - wightman(at(2.5, 0.3), at(0.0, 0.3), ev)) <= 1e-12 * std::abs(wtl));
    // short distances look flat
    ev.ell = AdsLength(1000.0);
    const cplx ws = wightman(at(0.0, 0.0), at(0.0, 1.0), ev);
    CHECK(ws.real() == doctest::Approx(1.0 / (4.0 * pi)).epsilon(1e-3));
}

TEST_CASE("flat-mode oracle reproduces the closed-form transition probability") {
    WightmanEvaluator ev;
    ev.mode = FieldMode::Flat;
    for (double gap : {0.0, 0.5, 1.0}) {
        const auto r = oracle_transition_probability(gap, OracleTrajectory{}, ev);
        CHECK(r.value == doctest::Approx(flat_transition_probability(gap)).epsilon(1e-6));
        CHECK(r.error < 1e-6 * r.value);
    }
}

TEST_CASE("C is Hermitian-consistent: C_AB* = C_BA") {
    WightmanEvaluator ev;
    ev.ell = AdsLength(1.0);
    OraclePair ab;
    ab.a = {{TrajectoryKind::Static, 0.0}, 0.0};
    ab.b = {{TrajectoryKind::Static, std::sinh(1.0)}, 0.5};
    ab.gap = 0.5;
    OraclePair ba = ab;
    std::swap(ba.a, ba.b);
    const cplx c1 = oracle_matrix_element_c(ab, ev).value;
    const cplx c2 = oracle_matrix_element_c(ba, ev).value;
    CHECK(std::abs(std::conj(c1) - c2) <= 1e-8 * std::abs(c1));
}

TEST_CASE("epsilon extrapolation") {
    const std::vector<double> eps{0.08, 0.04, 0.02, 0.01};
    std::vector<double> vals, sq, errs(eps.size(), 1e-15);
    for (double e : eps) {
        vals.push_back(1.0 + 2.0 * e + 3.0 * e * e);
        sq.push_back(1.0 + 0.5 * std::sqrt(e) + e);
    }
    const auto a = extrapolate_epsilon(eps, vals, errs);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.fit_residual < 1e-12);
    const auto s = extrapolate_epsilon(eps, sq, errs, EpsilonModel::SquareRoot);
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
    const std::vector<double> wild{1.0, 3.0, -2.0, 5.0};
    CHECK_THROWS_AS(extrapolate_epsilon(eps, wild, errs), Error);
}

TEST_CASE("flat mode has no circular orbits") {
    WightmanEvaluator ev;
    ev.mode = FieldMode::Flat;
    OracleTrajectory t;
    t.kind = TrajectoryKind::Circular;
    t.radius_over_sigma = 1.0;
    CHECK_THROWS_AS(oracle_transition_probability(0.5, t, ev), Error);
}

TEST_CASE("circular X and P against the oracle") {
    const Tolerance tol{1e-10, 1e-14};
    for (auto bc : {BoundaryCondition::Dirichlet, BoundaryCondition::Neumann})
        for (double t0 : {0.0, 1.0}) {
            const auto cfg =
                PairConfig::from_distances(TrajectoryType::Circular, 1.0, AdsLength(1.0), 0.5, 1.0, t0, bc).circular_pair();
            WightmanEvaluator ev;
            ev.ell = cfg.ell;
            ev.zeta = bc;
            const cplx core = matrix_element_x_circular(cfg, tol).value;
            const cplx orc = oracle_matrix_element_x(oracle_pair(cfg), ev).value;
            CHECK(std::abs(core - orc) <= 1e-6 * std::abs(orc));
        }
    WightmanEvaluator ev;
    ev.ell = AdsLength(1.0);
    ev.zeta = BoundaryCondition::Dirichlet;
    OracleTrajectory orbit;
    orbit.kind = TrajectoryKind::Circular;
    orbit.radius_over_sigma = std::sinh(0.5);
    const double p = transition_probability_circular(1.0, AdsLength(1.0), BoundaryCondition::Dirichlet, tol).value;
    CHECK(oracle_transition_probability(1.0, orbit, ev).value == doctest::Approx(p).epsilon(1e-6));
}
