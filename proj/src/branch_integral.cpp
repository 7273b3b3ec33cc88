#include "branch_integral.hpp"

#include <algorithm>

namespace adsh::detail {

std::vector<BranchPiece> branch_pieces(double w, double y_max, const BranchOptions& opt) {
    if (!(w > 0.0) || !(w < pi))
        throw Error(ErrorCode::DegenerateConfiguration, "branch kernel has a double zero (coincident points)");

    struct Cut {
        double y;
        bool is_zero;
    };
    std::vector<Cut> cuts{{0.0, false}};
    for (int m = 0;; ++m) {
        const double base = 2.0 * pi * m;
        if (m > 0) cuts.push_back({base - w, true});
        if (opt.split_at_extrema && m > 0) cuts.push_back({base, false});
        cuts.push_back({base + w, true});
        if (opt.split_at_extrema) cuts.push_back({base + pi, false});
        if (base + w >= y_max) break;
        if (m > 1000000) throw Error(ErrorCode::NonConvergence, "branch integral: truncation point too large");
    }
    // stop at the first zero at or beyond y_max
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.y < b.y; });
    std::size_t last = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i) {
        last = i;
        if (cuts[i].is_zero && cuts[i].y >= y_max) break;
    }
    cuts.resize(last + 1);

    std::vector<BranchPiece> pieces;
    const double freq = std::abs(opt.oscillation);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Cut& a = cuts[i];
        const Cut& b = cuts[i + 1];
        if (!(b.y > a.y)) continue;
        const double mid = 0.5 * (a.y + b.y);
        const double m_pos = std::round(mid / (2.0 * pi));
        cplx factor;
        if (std::abs(mid - 2.0 * pi * m_pos) < w) {
            factor = (static_cast<long>(m_pos) % 2 == 0) ? 1.0 : -1.0;
        } else {
            const long m_neg = static_cast<long>(std::floor(mid / (2.0 * pi)));
            factor = cplx(0.0, (m_neg % 2 == 0) ? -1.0 : 1.0);
        }

        // sub-panels for oscillatory g
        int nsub = 1;
        if (freq > 0.0) nsub = std::max(1, static_cast<int>(std::ceil((b.y - a.y) * freq / (2.0 * pi * 4.0))));
        for (int k = 0; k < nsub; ++k) {
            BranchPiece p;
            p.lo = (k == 0) ? a.y : a.y + (b.y - a.y) * k / nsub;
            p.hi = (k == nsub - 1) ? b.y : a.y + (b.y - a.y) * (k + 1) / nsub;
            p.factor = factor;
            pieces.push_back(p);
        }
    }
    return pieces;
}

}  // namespace adsh::detail
