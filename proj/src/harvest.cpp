#include "adsharvest/harvest.hpp"

#include <cmath>

namespace adsh {

std::string_view to_string(TrajectoryType t) noexcept {
    return t == TrajectoryType::Static ? "static" : "circular";
}

PairConfig PairConfig::from_distances(TrajectoryType kind, double gap, AdsLength ell, double d_origin,
                                      double separation, double t0, BoundaryCondition zeta) {
    if (!(separation >= 0.0) || !std::isfinite(separation))
        throw Error(ErrorCode::InvalidArgument, "separation must be non-negative and finite");
    PairConfig c;
    c.kind = kind;
    c.gap_omega_sigma = gap;
    c.ell = ell;
    c.t0_over_sigma = t0;
    c.zeta = zeta;
    c.position_a = radius_from_proper_distance(ell, d_origin);
    c.position_b = radius_from_proper_distance(ell, d_origin + separation);
    return c;
}

double PairConfig::separation() const { return proper_distance(ell, position_a, position_b); }
double PairConfig::d_origin() const { return proper_distance(ell, RadialPosition::origin(), position_a); }

StaticPair PairConfig::static_pair() const {
    return {{gap_omega_sigma, position_a}, {gap_omega_sigma, position_b}, t0_over_sigma, ell, zeta};
}

CircularPair PairConfig::circular_pair() const {
    return {position_a, position_b, gap_omega_sigma, t0_over_sigma, ell, zeta};
}

double concurrence(double p_a, double p_b, cplx x) {
    if (!(p_a >= 0.0) || !(p_b >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "concurrence requires non-negative transition probabilities");
    return 2.0 * std::max(0.0, std::abs(x) - std::sqrt(p_a * p_b));
}

HarvestResult assemble(const Estimate<double>& p_a, const Estimate<double>& p_b, const Estimate<cplx>& x) {
    HarvestResult r;
    r.p_a = p_a.value;
    r.p_b = p_b.value;
    r.x = x.value;
    r.err_p_a = p_a.error;
    r.err_p_b = p_b.error;
    r.err_x = x.error;
    if (r.p_a < 0.0 || r.p_b < 0.0) {
        if (r.p_a < -r.err_p_a || r.p_b < -r.err_p_b)
            throw Error(ErrorCode::NonConvergence, "transition probability came out negative beyond its error");
        r.p_a = std::max(r.p_a, 0.0);
        r.p_b = std::max(r.p_b, 0.0);
    }
    r.concurrence = concurrence(r.p_a, r.p_b, r.x);
    const double root = std::sqrt(r.p_a * r.p_b);
    // first-order propagation; sqrt(pa pb) sensitivity is unbounded as pa pb -> 0
    const double err_root = root > 0.0 ? (r.p_b * r.err_p_a + r.p_a * r.err_p_b) / (2.0 * root)
                                        : std::sqrt(r.err_p_a * r.err_p_b + r.p_a * r.err_p_b + r.p_b * r.err_p_a);
    const double band = r.err_x + err_root;
    const double margin = std::abs(r.x) - root;
    if (margin > band) {
        r.clamp = ClampFlag::Entangled;
        r.err_concurrence = 2.0 * band;
    } else if (margin < -band) {
        r.clamp = ClampFlag::Clamped;
        r.err_concurrence = 0.0;
    } else {
        r.clamp = ClampFlag::Marginal;
        r.err_concurrence = 2.0 * band;
    }
    return r;
}

HarvestResult HarvestParts::combine(BoundaryCondition bc) const {
    return assemble(p_a.combine(bc), p_b.combine(bc), x.combine(bc));
}

HarvestParts evaluate_pair_parts(const PairConfig& cfg, const Tolerance& tol) {
    HarvestParts h;
    if (cfg.kind == TrajectoryType::Static) {
        const auto pair = cfg.static_pair();
        h.x = matrix_element_parts_static(pair, tol);
        h.p_a = transition_parts_static(pair.detector_a, cfg.ell, tol);
        h.p_b = transition_parts_static(pair.detector_b, cfg.ell, tol);
    } else {
        h.x = matrix_element_parts_circular(cfg.circular_pair(), tol);
        h.p_a = transition_parts_circular(cfg.gap_omega_sigma, cfg.ell, tol);
        h.p_b = h.p_a;
    }
    return h;
}

HarvestResult evaluate_pair(const PairConfig& cfg, const Tolerance& tol) {
    return evaluate_pair_parts(cfg, tol).combine(cfg.zeta);
}

HarvestResult evaluate_pair(const StaticPair& pair, const Tolerance& tol) {
    PairConfig c;
    c.kind = TrajectoryType::Static;
    c.gap_omega_sigma = pair.detector_a.gap_omega_sigma;
    c.ell = pair.ell;
    c.t0_over_sigma = pair.t0_over_sigma;
    c.zeta = pair.zeta;
    c.position_a = pair.detector_a.position;
    c.position_b = pair.detector_b.position;
    pair.validate();
    return evaluate_pair(c, tol);
}

HarvestResult evaluate_pair(const CircularPair& pair, const Tolerance& tol) {
    PairConfig c;
    c.kind = TrajectoryType::Circular;
    c.gap_omega_sigma = pair.gap_omega_sigma;
    c.ell = pair.ell;
    c.t0_over_sigma = pair.t0_over_sigma;
    c.zeta = pair.zeta;
    c.position_a = pair.r_a;
    c.position_b = pair.r_b;
    return evaluate_pair(c, tol);
}

}  // namespace adsh
