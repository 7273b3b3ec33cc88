#pragma once

// One-dimensional quadrature kernels: tanh-sinh, Gaussian-damped
// oscillatory integrals on [0, inf), and principal values over periodic
// pole lattices.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "adsharvest/common.hpp"
#include "adsharvest/specialfun.hpp"

namespace adsh {

template <class T>
struct QuadResult {
    T value{};
    double abs_error = 0.0;
    long evaluations = 0;
    bool converged = true;
    int levels = 0;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        abs_error += o.abs_error;
        evaluations += o.evaluations;
        converged = converged && o.converged;
        levels = std::max(levels, o.levels);
        return *this;
    }
};

namespace detail {

struct TanhSinhNode {
    double comp;    // 1 - tanh(pi/2 sinh t)
    double weight;  // (pi/2) cosh t / cosh^2(pi/2 sinh t)
};

inline constexpr double tanh_sinh_tmax = 4.5;
inline constexpr int tanh_sinh_table_levels = 16;

/// Nodes with t > 0 introduced at each level; level 0 holds t = 1..4.
const std::vector<std::vector<TanhSinhNode>>& tanh_sinh_table();

template <class F>
auto call_with_complement(F& f, double x, double xc) {
    if constexpr (std::is_invocable_v<F&, double, double>) return f(x, xc);
    else return f(x);
}

template <class T>
double magnitude(const T& v) {
    return std::abs(v);
}

}  // namespace detail

/// Integrates f over [a, b].  f may take (x) or (x, xc) where xc is the
/// signed offset from the nearer endpoint (x - a > 0 on the left half,
/// x - b < 0 on the right half), exact even where x itself rounds onto
/// the endpoint.  Endpoint singularities of inverse-square-root type are
/// handled without special treatment.
template <class F>
auto tanh_sinh(F&& f, double a, double b, const Tolerance& tol) {
    using R = std::decay_t<decltype(detail::call_with_complement(f, 0.5 * (a + b), 0.5 * (b - a)))>;
    QuadResult<R> out{};
    if (!(b > a)) {
        if (a == b) return out;
        auto r = tanh_sinh(f, b, a, tol);
        r.value = -r.value;
        return r;
    }
    const auto& table = detail::tanh_sinh_table();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const int levels = std::min(tol.max_levels, detail::tanh_sinh_table_levels);

    double l1 = 0.0;  // sum of |w f|, sets the roundoff floor
    auto pair_sum = [&](const std::vector<detail::TanhSinhNode>& nodes) {
        R s{};
        for (const auto& nd : nodes) {
            const double off = half * nd.comp;
            if (off == 0.0) continue;
            R fr = detail::call_with_complement(f, b - off, -off);
            R fl = detail::call_with_complement(f, a + off, off);
            out.evaluations += 2;
            s += nd.weight * (fr + fl);
            l1 += nd.weight * (detail::magnitude(fr) + detail::magnitude(fl));
        }
        return s;
    };

    R sum = (0.5 * pi) * detail::call_with_complement(f, mid, half);
    l1 += 0.5 * pi * detail::magnitude(sum);
    out.evaluations += 1;
    sum += pair_sum(table[0]);
    R estimate = half * sum;
    double best_err = std::numeric_limits<double>::infinity();
    out.converged = false;
    for (int k = 1; k <= levels; ++k) {
        const double h = std::ldexp(1.0, -k);
        sum += pair_sum(table[k]);
        const R next = half * h * sum;
        const double err = detail::magnitude(next - estimate);
        estimate = next;
        best_err = std::min(best_err, err);
        out.levels = k;
        if (!std::isfinite(detail::magnitude(estimate))) break;
        const double floor = 64.0 * std::numeric_limits<double>::epsilon() * half * h * l1;
        if (k >= 3 && best_err <= std::max(tol.target(detail::magnitude(estimate)), floor)) {
            out.converged = true;
            break;
        }
    }
    out.value = estimate;
    out.abs_error = best_err;
    return out;
}

/// Throws NonConvergence naming `what` if a sub-integral failed.
template <class T>
const QuadResult<T>& require_converged(const QuadResult<T>& r, const std::string& what) {
    if (!r.converged)
        throw Error(ErrorCode::NonConvergence,
                    what + ": quadrature did not reach tolerance (error estimate " + std::to_string(r.abs_error) + ")");
    return r;
}

struct GaussianOscillatoryOptions {
    double y_max_scale = 1.0;  // multiplies the Gaussian truncation point
    int oscillations_per_panel = 4;
};

namespace detail {
/// Smallest Y with M * int_Y^inf e^{-a y^2} dy < target.
double gaussian_truncation(double a, double envelope, double target);
/// M * int_Y^inf e^{-a y^2} dy
double gaussian_tail_bound(double a, double envelope, double y);
}  // namespace detail

/// int_0^inf e^{-a y^2} e^{-i beta y} f_slow(y) dy.
template <class F>
QuadResult<cplx> gaussian_oscillatory(double a, double beta, F&& f_slow, const Tolerance& tol,
                                      const GaussianOscillatoryOptions& opt = {}) {
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "gaussian_oscillatory requires a > 0");
    // envelope of f_slow sampled over the Gaussian bulk
    const double bulk = std::sqrt(40.0 / a);
    double env = 0.0;
    for (int j = 0; j <= 64; ++j) env = std::max(env, std::abs(cplx(f_slow(bulk * j / 64.0))));
    env = 2.0 * std::max(env, 1e-300);
    const double y_max = opt.y_max_scale * detail::gaussian_truncation(a, env, tol.abs / 10.0);
    const double per_panel = 2.0 * pi * opt.oscillations_per_panel / std::max(std::abs(beta), 1e-300);
    const int panels = std::max(1, static_cast<int>(std::ceil(y_max / per_panel)));
    Tolerance sub = tol;
    sub.abs = tol.abs / panels;
    QuadResult<cplx> out{};
    for (int p = 0; p < panels; ++p) {
        const double lo = y_max * p / panels, hi = y_max * (p + 1) / panels;
        out += tanh_sinh(
            [&](double y) { return std::exp(-a * y * y) * cplx(std::cos(beta * y), -std::sin(beta * y)) * f_slow(y); },
            lo, hi, sub);
    }
    out.abs_error += detail::gaussian_tail_bound(a, env, y_max);
    return out;
}

/// PV int_{-h}^{h} g(u) du for g with a simple pole at u = 0, computed as
/// int_0^h [g(u) + g(-u)] du.  g takes the offset from the pole, so that
/// the singular factor can be formed exactly in u.
template <class F>
QuadResult<double> pv_window(F&& g, double half_width, const Tolerance& tol) {
    return tanh_sinh([&](double u) { return double(g(u)) + double(g(-u)); }, 0.0, half_width, tol);
}

/// PV int_{y_start}^inf f_num(y) / sin(pi (y - offset) / period) dy.
/// f_num must carry its own Gaussian damping e^{-a y^2}.  y_start must be a
/// pole (with f_num vanishing there) or a window edge half-way between poles.
template <class F>
QuadResult<double> pv_periodic_poles(F&& f_num, double period, double offset, double a, double y_start,
                                     const Tolerance& tol) {
    if (!(period > 0.0) || !(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "pv_periodic_poles: bad period or damping");
    const double half = 0.5 * period;
    const double k = (y_start - offset) / period;
    const double kn = std::round(k);
    const double kh = std::floor(k) + 0.5;
    const double snap = 1e-12 * std::max(1.0, std::abs(k));
    long n;
    QuadResult<double> out{};
    out.converged = true;
    if (std::abs(k - kn) <= snap) {
        // starts on a pole: half window, numerator must vanish there
        const double scale = std::max(std::abs(f_num(y_start + 0.25 * period)), 1e-300);
        if (std::abs(f_num(y_start)) > 1e-12 * scale)
            throw Error(ErrorCode::PoleOnBoundary, "pv_periodic_poles: non-removable pole at the lower limit");
        n = static_cast<long>(kn);
        const double pole = offset + n * period;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        out += tanh_sinh([&](double u) { return sgn * f_num(pole + u) / std::sin(pi * u / period); }, 0.0, half, tol);
        ++n;
    } else if (std::abs(k - kh) <= snap) {
        n = static_cast<long>(std::floor(k)) + 1;
    } else {
        throw Error(ErrorCode::PoleOnBoundary, "pv_periodic_poles: lower limit is neither a pole nor a window edge");
    }
    const double cut = std::sqrt(std::log(10.0 / tol.abs) / a);
    const long first = n;
    const long count = std::max<long>(1, static_cast<long>(std::ceil((cut - (offset + first * period - half)) / period)));
    Tolerance sub = tol;
    sub.abs = tol.abs / static_cast<double>(count + 1);
    for (;; ++n) {
        const double pole = offset + n * period;
        if (std::exp(-a * (pole - half) * (pole - half)) < tol.abs / 10.0 && pole - half > 0.0) break;
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        auto w = tanh_sinh(
            [&](double u) { return sgn * (f_num(pole + u) - f_num(pole - u)) / std::sin(pi * u / period); }, 0.0, half,
            sub);
        out += w;
        if (n - first > 1000000) throw Error(ErrorCode::NonConvergence, "pv_periodic_poles: too many windows");
    }
    return out;
}

}  // namespace adsh
