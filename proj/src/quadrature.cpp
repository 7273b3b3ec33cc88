#include "adsharvest/quadrature.hpp"

#include <cmath>

namespace adsh::detail {
namespace {

std::vector<std::vector<TanhSinhNode>> build_table() {
    std::vector<std::vector<TanhSinhNode>> table(tanh_sinh_table_levels + 1);
    auto node = [](double t) {
        const double u = 0.5 * pi * std::sinh(t);
        const double cu = std::cosh(u);
        return TanhSinhNode{std::exp(-u) / cu, 0.5 * pi * std::cosh(t) / (cu * cu)};
    };
    for (int j = 1; j <= static_cast<int>(tanh_sinh_tmax); ++j) table[0].push_back(node(j));
    for (int k = 1; k <= tanh_sinh_table_levels; ++k) {
        const double h = std::ldexp(1.0, -k);
        for (long j = 1;; j += 2) {
            const double t = j * h;
            if (t > tanh_sinh_tmax) break;
            table[k].push_back(node(t));
        }
    }
    return table;
}

}  // namespace

const std::vector<std::vector<TanhSinhNode>>& tanh_sinh_table() {
    static const auto table = build_table();
    return table;
}

double gaussian_tail_bound(double a, double envelope, double y) {
    return envelope * 0.5 * std::sqrt(pi / a) * special::erfc(std::sqrt(a) * y);
}

double gaussian_truncation(double a, double envelope, double target) {
    double y = std::sqrt(1.0 / a);
    while (gaussian_tail_bound(a, envelope, y) >= target) y *= 1.05;
    return y;
}

}  // namespace adsh::detail
