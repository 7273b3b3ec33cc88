#pragma once

// AdS3 radial geometry for detectors on a common ray.
// Lengths are in units of the switching width sigma.

#include "adsharvest/common.hpp"

namespace adsh {

class AdsLength {
public:
    explicit AdsLength(double ell_over_sigma);
    double value() const noexcept { return ell_; }

private:
    double ell_;
};

/// Radial coordinate r/ell of the static chart.
class RadialPosition {
public:
    RadialPosition() = default;
    explicit RadialPosition(double r_over_ell);

    static RadialPosition from_radius(AdsLength ell, double r_over_sigma);
    static RadialPosition origin() { return RadialPosition{}; }

    double r_over_ell() const noexcept { return r_; }
    double radius(AdsLength ell) const noexcept { return r_ * ell.value(); }
    /// rho = asinh(r/ell), the global radial coordinate
    double rho() const noexcept;

private:
    double r_ = 0.0;
};

struct RedshiftFactor {
    double gamma = 1.0;
};

/// Geodesic distance at equal coordinate time, symmetric in its arguments.
double proper_distance(AdsLength ell, RadialPosition r1, RadialPosition r2);

RadialPosition radius_from_proper_distance(AdsLength ell, double d_over_sigma);

RedshiftFactor redshift(AdsLength ell, RadialPosition r);
RedshiftFactor redshift(RadialPosition r);

/// alpha of a single static detector, (-(r/ell)^2 +- 1)/gamma^2.
double static_alpha(RadialPosition r, int sign);

/// alpha for two static detectors on a ray: (-rA rB +- 1)/(gA gB)
double static_pair_alpha(RadialPosition a, RadialPosition b, int sign);

/// alpha for two co-rotating circular geodesics, 1/cosh(rhoB - rhoA).
double corotating_alpha(RadialPosition a, RadialPosition b);

/// First positive zero w in [0, pi] of cos(y) + alpha, computed without
/// going through arccos.  cos(y) + alpha = cos(y) - cos(w).
double static_pair_first_zero(RadialPosition a, RadialPosition b, int sign);
double corotating_first_zero(RadialPosition a, RadialPosition b, int sign);

}  // namespace adsh
