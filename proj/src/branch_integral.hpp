#pragma once

// int_0^Y g(y) / sqrt(cos y - cos w) dy with the square root continued
// along the regulated contour y - i0.  Zeros of cos y - cos w sit at
// 2 pi m +- w.  On the positive region around 2 pi m the kernel is
// (-1)^m / sqrt|v|, on the negative region between 2 pi m + w and
// 2 pi (m+1) - w it is (-1)^m (-i) / sqrt|v|.

#include <cmath>
#include <vector>

#include "adsharvest/quadrature.hpp"

namespace adsh::detail {

struct BranchOptions {
    bool split_at_extrema = false;  // also cut at y = m pi
    double oscillation = 0.0;       // angular frequency of g, for panel sizing
};

struct BranchPiece {
    double lo, hi;
    cplx factor;
};

std::vector<BranchPiece> branch_pieces(double w, double y_max, const BranchOptions& opt);

/// nearest zero of the family 2 pi m + sign w, formed exactly as the cut points are
inline double nearest_branch_zero(double w, int sign, double y) {
    const double m = std::round((y - sign * w) / (2.0 * pi));
    return 2.0 * pi * m + sign * w;
}

template <class G>
QuadResult<cplx> branch_integral(double w, double y_max, G&& g, const Tolerance& tol, const BranchOptions& opt = {}) {
    const auto pieces = branch_pieces(w, y_max, opt);
    Tolerance sub = tol;
    sub.abs = tol.abs / static_cast<double>(pieces.size());
    QuadResult<cplx> out{};
    for (const auto& p : pieces) {
        auto integrand = [&](double y, double yc) -> cplx {
            // |cos y - cos w| = 2 |sin((y - z+)/2) sin((y - z-)/2)|, one zero from each family
            const double end = yc > 0.0 ? p.lo : p.hi;
            const double dp = (end - nearest_branch_zero(w, +1, y)) + yc;
            const double dm = (end - nearest_branch_zero(w, -1, y)) + yc;
            const double v = 2.0 * std::abs(std::sin(0.5 * dp) * std::sin(0.5 * dm));
            return cplx(g(y)) / std::sqrt(v);
        };
        auto r = tanh_sinh(integrand, p.lo, p.hi, sub);
        r.value *= p.factor;
        out += r;
    }
    return out;
}

}  // namespace adsh::detail
