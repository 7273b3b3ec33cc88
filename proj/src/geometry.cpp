#include "adsharvest/geometry.hpp"

#include <cmath>

namespace adsh {

AdsLength::AdsLength(double ell_over_sigma) : ell_(ell_over_sigma) {
    if (!(ell_over_sigma > 0.0) || !std::isfinite(ell_over_sigma))
        throw Error(ErrorCode::InvalidArgument, "AdS length must be positive and finite");
}

RadialPosition::RadialPosition(double r_over_ell) : r_(r_over_ell) {
    if (!(r_over_ell >= 0.0) || !std::isfinite(r_over_ell))
        throw Error(ErrorCode::InvalidArgument, "radial position must be non-negative and finite");
}

RadialPosition RadialPosition::from_radius(AdsLength ell, double r_over_sigma) {
    return RadialPosition(r_over_sigma / ell.value());
}

double RadialPosition::rho() const noexcept { return std::asinh(r_); }

double proper_distance(AdsLength ell, RadialPosition r1, RadialPosition r2) {
    // ell*ln[(R2+sqrt(R2^2+ell^2))/(R1+sqrt(R1^2+ell^2))] = ell*(asinh(r2)-asinh(r1))
    return ell.value() * std::abs(r2.rho() - r1.rho());
}

RadialPosition radius_from_proper_distance(AdsLength ell, double d_over_sigma) {
    if (!(d_over_sigma >= 0.0) || !std::isfinite(d_over_sigma))
        throw Error(ErrorCode::InvalidArgument, "proper distance must be non-negative and finite");
    return RadialPosition(std::sinh(d_over_sigma / ell.value()));
}

RedshiftFactor redshift(RadialPosition r) { return {std::sqrt(r.r_over_ell() * r.r_over_ell() + 1.0)}; }

RedshiftFactor redshift(AdsLength, RadialPosition r) { return redshift(r); }

double static_alpha(RadialPosition r, int sign) {
    const double r2 = r.r_over_ell() * r.r_over_ell();
    const double g2 = r2 + 1.0;
    return sign >= 0 ? (1.0 - r2) / g2 : -(r2 + 1.0) / g2;
}

double static_pair_alpha(RadialPosition a, RadialPosition b, int sign) {
    const double ra = a.r_over_ell(), rb = b.r_over_ell();
    const double gg = redshift(a).gamma * redshift(b).gamma;
    return (-ra * rb + (sign >= 0 ? 1.0 : -1.0)) / gg;
}

double corotating_alpha(RadialPosition a, RadialPosition b) { return 1.0 / std::cosh(b.rho() - a.rho()); }

double static_pair_first_zero(RadialPosition a, RadialPosition b, int sign) {
    const double ra = a.r_over_ell(), rb = b.r_over_ell();
    // sin w and cos w share the denominator gA*gB
    if (sign < 0) return std::atan2(std::abs(ra - rb), 1.0 + ra * rb);
    return std::atan2(ra + rb, ra * rb - 1.0);
}

double corotating_first_zero(RadialPosition a, RadialPosition b, int sign) {
    const double sh = std::sinh(std::abs(b.rho() - a.rho()));
    return sign < 0 ? std::atan2(sh, 1.0) : std::atan2(sh, -1.0);
}

}  // namespace adsh
