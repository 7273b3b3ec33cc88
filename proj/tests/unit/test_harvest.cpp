#include <cmath>

#include "doctest.h"

#include "adsharvest/harvest.hpp"
#include "adsharvest/oracles.hpp"

using namespace adsh;

TEST_CASE("concurrence examples") {
    CHECK(concurrence(0.1, 0.1, cplx(0.3, 0.0)) == doctest::Approx(0.4));
    CHECK(concurrence(0.04, 0.09, cplx(0.0, 0.1)) == doctest::Approx(2.0 * (0.1 - 0.06)));
    CHECK(concurrence(0.5, 0.5, cplx(0.1, 0.1)) == 0.0);
    CHECK_THROWS_AS(concurrence(-0.1, 0.1, cplx(1.0, 0.0)), Error);
}

TEST_CASE("concurrence ignores the phase of X") {
    const double c = concurrence(0.02, 0.03, cplx(0.07, 0.0));
    for (double phi : {0.3, 1.7, -2.9}) CHECK(concurrence(0.02, 0.03, std::polar(0.07, phi)) == doctest::Approx(c));
}

TEST_CASE("concurrence is non-increasing in the local noise") {
    double last = 1e300;
    for (int i = 0; i <= 20; ++i) {
        const double p = 0.01 * i;
        const double c = concurrence(p, p, cplx(0.1, 0.05));
        CHECK(c <= last);
        CHECK(c >= 0.0);
        last = c;
    }
    CHECK(last == 0.0);
}

TEST_CASE("assemble flags") {
    const auto e = assemble({0.01, 1e-16}, {0.01, 1e-16}, {cplx(0.05, 0.0), 1e-16});
    CHECK(e.clamp == ClampFlag::Entangled);
    const auto z = assemble({0.1, 1e-16}, {0.1, 1e-16}, {cplx(0.05, 0.0), 1e-16});
    CHECK(z.clamp == ClampFlag::Clamped);
    CHECK(z.concurrence == 0.0);
    const auto m = assemble({0.1, 1e-3}, {0.1, 1e-3}, {cplx(0.1, 0.0), 1e-3});
    CHECK(m.clamp == ClampFlag::Marginal);
}

TEST_CASE("evaluate_pair in the flat limit") {
    const auto cfg =
        PairConfig::from_distances(TrajectoryType::Static, 0.01, AdsLength(80.0), 0.0, 0.1, 0.0, BoundaryCondition::Transparent);
    const auto r = evaluate_pair(cfg, Tolerance{});
    CHECK(r.concurrence == doctest::Approx(flat_concurrence({0.01, 0.1})).epsilon(1e-3));
    CHECK(cfg.separation() == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(cfg.d_origin() == 0.0);
}

TEST_CASE("the parts combine to the per-zeta results") {
    const auto cfg =
        PairConfig::from_distances(TrajectoryType::Static, 1.0, AdsLength(1.0), 0.2, 1.0, 0.5, BoundaryCondition::Dirichlet);
    const auto parts = evaluate_pair_parts(cfg, Tolerance{});
    const auto direct = evaluate_pair(cfg, Tolerance{});
    const auto combined = parts.combine(BoundaryCondition::Dirichlet);
    CHECK(combined.concurrence == doctest::Approx(direct.concurrence).epsilon(1e-14));
    CHECK(combined.p_b == doctest::Approx(direct.p_b).epsilon(1e-14));
}

TEST_CASE("degenerate pairs are rejected") {
    for (auto kind : {TrajectoryType::Static, TrajectoryType::Circular}) {
        const auto cfg = PairConfig::from_distances(kind, 1.0, AdsLength(1.0), 0.5, 0.0, 0.0, BoundaryCondition::Transparent);
        try {
            (void)evaluate_pair(cfg, Tolerance{});
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateConfiguration);
        }
    }
    CHECK_THROWS_AS(PairConfig::from_distances(TrajectoryType::Static, 1.0, AdsLength(1.0), 0.0, -1.0, 0.0,
                                               BoundaryCondition::Transparent),
                    Error);
}
