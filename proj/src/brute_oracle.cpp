#include "adsharvest/brute_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>

namespace adsh {
namespace {

constexpr cplx I(0.0, 1.0);

struct GaussLegendre {
    static constexpr int n = 20;
    std::array<double, n> x{}, w{};
};

const GaussLegendre& gauss_legendre() {
    static const GaussLegendre g = [] {
        GaussLegendre r;
        const int n = GaussLegendre::n;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 1.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            r.x[i] = z;
            r.w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        return r;
    }();
    return g;
}

double branch_sign(double re_y) {
    const double k = std::floor((std::abs(re_y) + pi) / (2.0 * pi));
    return std::fmod(k, 2.0) == 0.0 ? 1.0 : -1.0;
}

struct Embedding {
    cplx x1, x2, t1, t2;
};

Embedding embed(const SpacetimePoint& p, double ell) {
    const double r = p.radius_over_sigma;
    const double lc = std::sqrt(ell * ell + r * r);  // ell cosh(rho)
    const cplx tau = p.t / ell;
    return {r * std::sin(p.phi), r * std::cos(p.phi), lc * std::cos(tau), lc * std::sin(tau)};
}

cplx sq(cplx z) { return z * z; }

// switching, phase and Wightman pieces of one (u, s) integrand
struct Detector {
    OracleTrajectory traj;
    double c;       // clock rate
    double center;  // switching centre, coordinate time
};

cplx chi(const Detector& d, cplx t) { return std::exp(-0.5 * d.c * d.c * sq(t - d.center)); }

enum class Kind { P, X, C };

struct Setup {
    Kind kind;
    Detector first, second;  // first at time u + s, second at time u
    double gap;
    double phase_first, phase_second;  // e^{-i gap (phase_first c1 t1 + phase_second c2 t2)}
    WightmanEvaluator ev;
};

// trapezoid over real u of chi1(u+s) chi2(u) e^{phase} W(x1(u+s), x2(u))
cplx inner_integral(const Setup& st, cplx s) {
    const Detector& d1 = st.first;
    const Detector& d2 = st.second;
    const double q1 = d1.c * d1.c, q2 = d2.c * d2.c;
    const double kappa = 0.5 * (q1 + q2);
    // Gaussian centre in u, including the tilt from the linear phase
    const cplx u0 = (q1 * (d1.center - s) + q2 * d2.center) / (q1 + q2);
    const double lin = st.gap * (st.phase_first * d1.c + st.phase_second * d2.c);
    const cplx ueff = u0 - I * lin / (2.0 * kappa);
    const double re = ueff.real(), im = std::abs(ueff.imag());
    const double half_range = std::sqrt(42.0 / kappa) + 1e-3;
    // Poisson error ~ exp(-pi^2/(kappa h^2) + 2 pi im / h)
    const double a2 = pi * pi / kappa;
    double q = (2.0 * pi * im + std::sqrt(4.0 * pi * pi * im * im + 4.0 * a2 * 42.0)) / (2.0 * a2);
    double h = 1.0 / q;

    auto term = [&](double u) {
        const cplx t1 = u + s;
        const double t2 = u;
        const cplx ph = std::exp(-I * st.gap * (st.phase_first * d1.c * t1 + st.phase_second * d2.c * t2));
        return chi(d1, t1) * chi(d2, t2) * ph *
               wightman(d1.traj.at(t1, st.ev), d2.traj.at(cplx(t2, 0.0), st.ev), st.ev);
    };

    long n = static_cast<long>(std::ceil(half_range / h));
    cplx sum = term(re);
    double mag = std::abs(sum);
    for (long j = 1; j <= n; ++j) {
        const cplx a = term(re + j * h), b = term(re - j * h);
        sum += a + b;
        mag += std::abs(a) + std::abs(b);
    }
    cplx prev = h * sum;
    for (int level = 0; level < 6; ++level) {
        // add midpoints
        cplx add = 0.0;
        for (long j = -n; j < n; ++j) {
            const cplx a = term(re + (j + 0.5) * h);
            add += a;
            mag += std::abs(a);
        }
        sum += add;
        h *= 0.5;
        n *= 2;
        const cplx next = h * sum;
        if (std::abs(next - prev) <= 1e-14 * std::max(std::abs(next), 1e-3 * h * mag)) return next;
        prev = next;
    }
    return prev;
}

struct OuterResult {
    cplx value;
    double error;
};

// composite Gauss-Legendre over x in [lo, hi] of f(x), panel doubling
OuterResult composite(const std::function<cplx(double)>& f, double lo, double hi, double width0, double rel,
                      int max_ref) {
    const auto& gl = gauss_legendre();
    long panels = std::max<long>(2, static_cast<long>(std::ceil((hi - lo) / width0)));
    auto eval = [&](long np) {
        cplx s = 0.0;
        double m = 0.0;
        const double w = (hi - lo) / np;
        for (long p = 0; p < np; ++p) {
            const double c = lo + (p + 0.5) * w;
            for (int k = 0; k < GaussLegendre::n; ++k) {
                const cplx v = f(c + 0.5 * w * gl.x[k]) * (0.5 * w * gl.w[k]);
                s += v;
                m += std::abs(v);
            }
        }
        return std::pair<cplx, double>(s, m);
    };
    auto [prev, mag] = eval(panels);
    for (int r = 0; r < max_ref; ++r) {
        panels *= 2;
        auto [next, m2] = eval(panels);
        const double diff = std::abs(next - prev);
        if (diff <= std::max(rel * std::abs(next), 1e-15 * m2)) return {next, diff};
        prev = next;
        mag = m2;
    }
    throw Error(ErrorCode::NonConvergence, "oracle: outer integral did not converge");
}

// zeros and near-zeros of sigma and sigma + 2 along real relative time
std::vector<double> light_cone_points(const Setup& st, double lo, double hi) {
    std::vector<double> pts;
    WightmanEvaluator ev = st.ev;
    auto sig = [&](double s, double shift) {
        const double ell = ev.ell.value();
        if (ev.mode == FieldMode::Flat) {
            const auto p1 = st.first.traj.at(cplx(s, 0.0), ev), p2 = st.second.traj.at(cplx(0.0, 0.0), ev);
            const double dx = p1.radius_over_sigma - p2.radius_over_sigma;
            return dx * dx - s * s + shift;
        }
        const auto e1 = embed(st.first.traj.at(cplx(s, 0.0), ev), ell);
        const auto e2 = embed(st.second.traj.at(cplx(0.0, 0.0), ev), ell);
        const cplx v = sq(e1.x1 - e2.x1) + sq(e1.x2 - e2.x2) - sq(e1.t1 - e2.t1) - sq(e1.t2 - e2.t2);
        return v.real() / (2.0 * ell * ell) + shift;
    };
    const int scan = 20000;
    const double dx = (hi - lo) / scan;
    for (double shift : {0.0, 2.0}) {
        if (ev.mode == FieldMode::Flat && shift != 0.0) continue;
        double fp = sig(lo, shift), fpp = fp;
        for (int i = 1; i <= scan; ++i) {
            const double x = lo + i * dx;
            const double f = sig(x, shift);
            if ((f > 0) != (fp > 0)) {
                double a = x - dx, b = x, fa = fp;
                for (int it = 0; it < 80; ++it) {
                    const double m = 0.5 * (a + b);
                    const double fm = sig(m, shift);
                    if ((fm > 0) == (fa > 0)) {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                pts.push_back(0.5 * (a + b));
            } else if (i >= 2 && std::abs(fp) < std::abs(fpp) && std::abs(fp) <= std::abs(f) && std::abs(fp) < 0.05) {
                // touching zero: golden section on |f|
                double a = x - 2 * dx, b = x;
                const double gr = 0.6180339887498949;
                for (int it = 0; it < 100; ++it) {
                    const double c = b - gr * (b - a), d = a + gr * (b - a);
                    if (std::abs(sig(c, shift)) < std::abs(sig(d, shift))) b = d;
                    else a = c;
                }
                pts.push_back(0.5 * (a + b));
            }
            fpp = fp;
            fp = f;
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
              pts.end());
    return pts;
}

OuterResult real_axis(const std::function<cplx(double)>& f, const Setup& st, double lo, double hi, double rel,
                      int max_levels) {
    auto pts = light_cone_points(st, lo, hi);
    std::vector<double> cuts{lo};
    for (double p : pts)
        if (p > lo && p < hi) cuts.push_back(p);
    cuts.push_back(hi);
    Tolerance tol;
    tol.rel = rel;
    tol.abs = 1e-300;
    tol.max_levels = max_levels;
    OuterResult out{0.0, 0.0};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto r = tanh_sinh(f, cuts[i], cuts[i + 1], tol);
        out.value += r.value;
        out.error += r.abs_error;
    }
    return out;
}

double gaussian_reach(double g) { return std::sqrt(2.0 * 42.0 / g); }

// contour depth for integrands carrying e^{-i gap c s} e^{-c^2 s^2 / 4}:
// steepest descent passes through s = -2 i gap / c
double saddle_depth(double gap, double c) {
    if (gap <= 0.0) return 0.3 / c;
    return std::clamp(2.0 * gap, 0.6, 10.0) / c;
}

// one regulator value
OuterResult evaluate_single(const Setup& st, const OracleGrid& grid) {
    const Detector& d1 = st.first;
    const Detector& d2 = st.second;
    const double ell = st.ev.ell.value();
    const double scale = st.ev.mode == FieldMode::Ads ? std::min(ell, 1.0) : 1.0;
    const double g = (d1.c * d1.c * d2.c * d2.c) / (d1.c * d1.c + d2.c * d2.c);
    const double shift = d1.center - d2.center;  // relative-time offset of the Gaussian peak

    if (st.kind == Kind::X) {
        // time-ordered: s >= 0 only, both orderings added by the caller
        const double span = std::abs(shift) + gaussian_reach(g);
        if (grid.contour == ContourMode::RealAxis) {
            auto f = [&](double s) { return inner_integral(st, cplx(s, 0.0)); };
            return real_axis(f, st, 0.0, span, grid.rel_tol, 12);
        }
        const double eta = 0.5 * scale / std::max(d1.c, d2.c);
        auto f = [&](double x) {
            const double th = std::tanh(2.0 * x / eta);
            const cplx s(x, -eta * th);
            const cplx ds(1.0, -2.0 * (1.0 - th * th));
            return inner_integral(st, s) * ds;
        };
        return composite(f, 0.0, span + eta, std::min(0.25, eta) / std::max(d1.c, d2.c) + 0.0, grid.rel_tol,
                         grid.max_refinements);
    }
    // P and C: whole line
    const double c = d1.c;
    const double span = std::abs(shift) + gaussian_reach(g);
    if (grid.contour == ContourMode::RealAxis) {
        auto f = [&](double s) { return inner_integral(st, cplx(s, 0.0)); };
        return real_axis(f, st, shift - span, shift + span, grid.rel_tol, 12);
    }
    const double eta = saddle_depth(st.gap, c);
    const double reach = std::sqrt(eta * eta + 4.0 * 42.0 / (c * c));
    auto f = [&](double x) { return inner_integral(st, cplx(x, -eta)); };
    const double lo = std::min(-reach, shift - span), hi = std::max(reach, shift + span);
    return composite(f, lo, hi, std::min({0.25, 0.5 * eta, 0.5 * scale}), grid.rel_tol, grid.max_refinements);
}

template <class T>
T to_result(cplx v);
template <>
double to_result<double>(cplx v) {
    return v.real();
}
template <>
cplx to_result<cplx>(cplx v) {
    return v;
}

template <class T>
OracleEstimate<T> run_sequence(const std::function<OuterResult(double)>& at_eps, const OracleGrid& grid) {
    const auto eps = grid.epsilon_sequence();
    std::vector<OuterResult> raw(eps.size());
    if (grid.concurrent && eps.size() > 1) {
        std::vector<std::future<OuterResult>> fut;
        for (double e : eps) fut.push_back(std::async(std::launch::async, at_eps, e));
        for (std::size_t i = 0; i < eps.size(); ++i) raw[i] = fut[i].get();
    } else {
        for (std::size_t i = 0; i < eps.size(); ++i) raw[i] = at_eps(eps[i]);
    }
    std::vector<T> vals;
    std::vector<double> errs;
    for (const auto& r : raw) {
        vals.push_back(to_result<T>(r.value));
        errs.push_back(r.error);
    }
    return extrapolate_epsilon<T>(eps, vals, errs,
                                  grid.contour == ContourMode::Deformed ? EpsilonModel::Analytic
                                                                        : EpsilonModel::SquareRoot);
}

Detector make_detector(const OracleDetector& d, const WightmanEvaluator& ev) {
    return {d.trajectory, d.trajectory.clock_rate(ev), d.center};
}

void check_trajectory(const OracleTrajectory& t, const WightmanEvaluator& ev) {
    if (!(t.radius_over_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "oracle: radius must be >= 0");
    if (ev.mode == FieldMode::Flat && t.kind == TrajectoryKind::Circular)
        throw Error(ErrorCode::InvalidArgument, "oracle: circular trajectories are only defined in AdS mode");
}

}  // namespace

void WightmanEvaluator::validate() const {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::InvalidArgument, "Wightman regulator must be positive");
}

cplx wightman(const SpacetimePoint& x, const SpacetimePoint& xp, const WightmanEvaluator& ev) {
    if (ev.mode == FieldMode::Flat) {
        const cplx dt = x.t - xp.t - I * ev.epsilon;
        const cplx dx1 = x.radius_over_sigma * std::sin(x.phi) - xp.radius_over_sigma * std::sin(xp.phi);
        const cplx dx2 = x.radius_over_sigma * std::cos(x.phi) - xp.radius_over_sigma * std::cos(xp.phi);
        return 1.0 / (4.0 * pi * std::sqrt(dx1 * dx1 + dx2 * dx2 - dt * dt));
    }
    const double ell = ev.ell.value();
    SpacetimePoint shifted = x;
    shifted.t = x.t - I * (ev.epsilon * ell);
    const auto e1 = embed(shifted, ell), e2 = embed(xp, ell);
    const cplx sigma =
        (sq(e1.x1 - e2.x1) + sq(e1.x2 - e2.x2) - sq(e1.t1 - e2.t1) - sq(e1.t2 - e2.t2)) / (2.0 * ell * ell);
    const double sign = branch_sign((x.t - xp.t).real() / ell);
    const double z = zeta_value(ev.zeta);
    cplx w = 1.0 / std::sqrt(sigma);
    if (z != 0.0) w -= z / std::sqrt(sigma + 2.0);
    return sign * w / (4.0 * pi * ell * std::sqrt(2.0));
}

double OracleTrajectory::clock_rate(const WightmanEvaluator& ev) const {
    if (ev.mode == FieldMode::Flat || kind == TrajectoryKind::Circular) return 1.0;
    const double r = radius_over_sigma / ev.ell.value();
    return std::sqrt(r * r + 1.0);
}

SpacetimePoint OracleTrajectory::at(cplx t, const WightmanEvaluator& ev) const {
    SpacetimePoint p{t, radius_over_sigma, 0.0};
    if (kind == TrajectoryKind::Circular) p.phi = t / ev.ell.value();
    return p;
}

std::vector<double> OracleGrid::epsilon_sequence() const {
    if (!epsilons.empty()) return epsilons;
    if (contour == ContourMode::RealAxis) return {1e-2, std::pow(10.0, -2.5), 1e-3, std::pow(10.0, -3.5)};
    return {1e-4, std::pow(10.0, -4.5), 1e-5, std::pow(10.0, -5.5)};
}

template <class T>
OracleEstimate<T> extrapolate_epsilon(const std::vector<double>& eps, const std::vector<T>& values,
                                      const std::vector<double>& quad_errors, EpsilonModel model) {
    const std::size_t n = eps.size();
    if (n == 0 || values.size() != n || quad_errors.size() != n)
        throw Error(ErrorCode::InvalidArgument, "extrapolation: mismatched sequence lengths");
    OracleEstimate<T> out;
    out.epsilons = eps;
    out.samples = values;
    const double qerr = *std::max_element(quad_errors.begin(), quad_errors.end());
    if (n < 3) {
        out.value = values.back();
        out.error = qerr + (n == 2 ? std::abs(values[1] - values[0]) : 0.0);
        return out;
    }
    // successive differences must shrink as eps decreases
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] > eps[b]; });
    double prev_diff = -1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double diff = std::abs(values[order[k]] - values[order[k - 1]]);
        const double slack = 10.0 * qerr + 1e-13 * std::abs(values[order[k]]);
        if (prev_diff >= 0.0 && diff > 2.0 * prev_diff + slack)
            throw Error(ErrorCode::ExtrapolationUnstable, "oracle: regulator sequence is not converging monotonically");
        prev_diff = diff;
    }
    auto basis = [&](double e, double b[3]) {
        b[0] = 1.0;
        b[1] = model == EpsilonModel::Analytic ? e : std::sqrt(e);
        b[2] = model == EpsilonModel::Analytic ? e * e : e;
    };
    double m[3][3] = {};
    T rhs[3] = {};
    for (std::size_t i = 0; i < n; ++i) {
        double b[3];
        basis(eps[i], b);
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += b[r] * b[c];
            rhs[r] += b[r] * values[i];
        }
    }
    // Cramer's rule for the constant coefficient and the two slopes
    auto det3 = [](const double a[3][3]) {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const double d = det3(m);
    T coef[3];
    for (int col = 0; col < 3; ++col) {
        // linear in rhs: coefficient = sum_r cof(r, col) rhs[r] / d
        T acc{};
        for (int r = 0; r < 3; ++r) {
            double e[3][3];
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) e[i][j] = (j == col) ? (i == r ? 1.0 : 0.0) : m[i][j];
            acc += det3(e) / d * rhs[r];
        }
        coef[col] = acc;
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double b[3];
        basis(eps[i], b);
        const T fit = coef[0] + coef[1] * b[1] + coef[2] * b[2];
        ss += std::norm(values[i] - fit);
    }
    out.value = coef[0];
    out.fit_residual = n > 3 ? std::sqrt(ss / static_cast<double>(n - 3)) : 0.0;
    out.error = out.fit_residual + qerr;
    return out;
}

template OracleEstimate<double> extrapolate_epsilon<double>(const std::vector<double>&, const std::vector<double>&,
                                                            const std::vector<double>&, EpsilonModel);
template OracleEstimate<cplx> extrapolate_epsilon<cplx>(const std::vector<double>&, const std::vector<cplx>&,
                                                        const std::vector<double>&, EpsilonModel);

OracleEstimate<double> oracle_transition_probability(double gap, const OracleTrajectory& traj,
                                                     const WightmanEvaluator& ev, const OracleGrid& grid) {
    ev.validate();
    check_trajectory(traj, ev);
    auto at_eps = [&](double e) {
        WightmanEvaluator w = ev;
        w.epsilon = e;
        Setup st{Kind::P, {traj, traj.clock_rate(w), 0.0}, {traj, traj.clock_rate(w), 0.0}, gap, 1.0, -1.0, w};
        auto r = evaluate_single(st, grid);
        const double c2 = st.first.c * st.second.c;
        return OuterResult{r.value * c2, r.error * c2};
    };
    return run_sequence<double>(at_eps, grid);
}

OracleEstimate<cplx> oracle_matrix_element_x(const OraclePair& pair, const WightmanEvaluator& ev,
                                             const OracleGrid& grid) {
    ev.validate();
    check_trajectory(pair.a.trajectory, ev);
    check_trajectory(pair.b.trajectory, ev);
    auto at_eps = [&](double e) {
        WightmanEvaluator w = ev;
        w.epsilon = e;
        const Detector a = make_detector(pair.a, w), b = make_detector(pair.b, w);
        // t_B later: W(x_B, x_A); t_A later: W(x_A, x_B)
        Setup sb{Kind::X, b, a, pair.gap, 1.0, 1.0, w};
        Setup sa{Kind::X, a, b, pair.gap, 1.0, 1.0, w};
        const auto rb = evaluate_single(sb, grid);
        const auto ra = evaluate_single(sa, grid);
        const double cc = a.c * b.c;
        return OuterResult{-cc * (rb.value + ra.value), cc * (rb.error + ra.error)};
    };
    return run_sequence<cplx>(at_eps, grid);
}

OracleEstimate<cplx> oracle_matrix_element_c(const OraclePair& pair, const WightmanEvaluator& ev,
                                             const OracleGrid& grid) {
    ev.validate();
    check_trajectory(pair.a.trajectory, ev);
    check_trajectory(pair.b.trajectory, ev);
    auto at_eps = [&](double e) {
        WightmanEvaluator w = ev;
        w.epsilon = e;
        const Detector a = make_detector(pair.a, w), b = make_detector(pair.b, w);
        Setup st{Kind::C, a, b, pair.gap, 1.0, -1.0, w};
        const auto r = evaluate_single(st, grid);
        const double cc = a.c * b.c;
        return OuterResult{cc * r.value, cc * r.error};
    };
    return run_sequence<cplx>(at_eps, grid);
}

OracleTrajectory oracle_trajectory(const StaticDetector& det, AdsLength ell) {
    return {TrajectoryKind::Static, det.position.radius(ell)};
}

OraclePair oracle_pair(const StaticPair& pair) {
    OraclePair p;
    p.a = {oracle_trajectory(pair.detector_a, pair.ell), -0.5 * pair.t0_over_sigma};
    p.b = {oracle_trajectory(pair.detector_b, pair.ell), 0.5 * pair.t0_over_sigma};
    p.gap = pair.detector_a.gap_omega_sigma;
    return p;
}

OraclePair oracle_pair(const CircularPair& pair) {
    OraclePair p;
    p.a = {{TrajectoryKind::Circular, pair.r_a.radius(pair.ell)}, -0.5 * pair.t0_over_sigma};
    p.b = {{TrajectoryKind::Circular, pair.r_b.radius(pair.ell)}, 0.5 * pair.t0_over_sigma};
    p.gap = pair.gap_omega_sigma;
    return p;
}

}  // namespace adsh
