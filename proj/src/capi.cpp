#include "adsharvest/adsharvest.h"

#include <cmath>
#include <fstream>
#include <new>
#include <string>

#include "adsharvest/brute_oracle.hpp"
#include "adsharvest/harvest.hpp"
#include "adsharvest/oracles.hpp"
#include "adsharvest/sweep.hpp"

struct adsh_pair {
    adsh::PairConfig config;
    adsh::Tolerance tol;
};

struct adsh_sweep {
    adsh::SweepSpec spec;
};

namespace {

thread_local std::string last_error;

adsh_status status_for(adsh::ErrorCode c) {
    using adsh::ErrorCode;
    switch (c) {
        case ErrorCode::InvalidArgument: return ADSH_INVALID_ARGUMENT;
        case ErrorCode::NonConvergence: return ADSH_NON_CONVERGENCE;
        case ErrorCode::DegenerateConfiguration: return ADSH_DEGENERATE;
        case ErrorCode::ExtrapolationUnstable: return ADSH_EXTRAPOLATION_UNSTABLE;
        case ErrorCode::PoleOnBoundary: return ADSH_POLE_ON_BOUNDARY;
        case ErrorCode::Io: return ADSH_IO;
    }
    return ADSH_INTERNAL;
}

template <class F>
adsh_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return ADSH_OK;
    } catch (const adsh::Error& e) {
        last_error = e.what();
        return status_for(e.code());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return ADSH_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return ADSH_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw adsh::Error(adsh::ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

adsh::TrajectoryType trajectory(adsh_trajectory k) {
    if (k == ADSH_STATIC) return adsh::TrajectoryType::Static;
    if (k == ADSH_CIRCULAR) return adsh::TrajectoryType::Circular;
    throw adsh::Error(adsh::ErrorCode::InvalidArgument, "unknown trajectory kind");
}

void store(const adsh::HarvestResult& h, adsh_harvest_result* out) {
    out->p_a = h.p_a;
    out->p_b = h.p_b;
    out->re_x = h.x.real();
    out->im_x = h.x.imag();
    out->concurrence = h.concurrence;
    out->err_p_a = h.err_p_a;
    out->err_p_b = h.err_p_b;
    out->err_x = h.err_x;
    out->err_concurrence = h.err_concurrence;
    out->clamp_flag = static_cast<int>(h.clamp);
}

adsh::WightmanEvaluator evaluator(adsh_field field, double ell, int zeta) {
    adsh::WightmanEvaluator ev;
    if (field == ADSH_FIELD_FLAT) ev.mode = adsh::FieldMode::Flat;
    else if (field == ADSH_FIELD_ADS) ev.mode = adsh::FieldMode::Ads;
    else throw adsh::Error(adsh::ErrorCode::InvalidArgument, "unknown field mode");
    ev.ell = adsh::AdsLength(ell);
    ev.zeta = adsh::boundary_from_zeta(zeta);
    return ev;
}

adsh::OracleGrid grid(adsh_contour c) {
    adsh::OracleGrid g;
    if (c == ADSH_CONTOUR_REAL_AXIS) {
        g.contour = adsh::ContourMode::RealAxis;
        g.rel_tol = 1e-8;
    } else if (c != ADSH_CONTOUR_DEFORMED) {
        throw adsh::Error(adsh::ErrorCode::InvalidArgument, "unknown contour mode");
    }
    return g;
}

// flat mode places A at x = d_origin and B at d_origin + separation
adsh::OracleTrajectory oracle_traj(adsh_field field, adsh_trajectory kind, double ell, double d) {
    const adsh::TrajectoryKind k = trajectory(kind) == adsh::TrajectoryType::Static ? adsh::TrajectoryKind::Static
                                                                                   : adsh::TrajectoryKind::Circular;
    if (field == ADSH_FIELD_FLAT) return {k, d};
    const adsh::AdsLength l(ell);
    return {k, adsh::radius_from_proper_distance(l, d).radius(l)};
}

}  // namespace

extern "C" {

const char* adsh_version(void) { return "1.0.0"; }

const char* adsh_status_string(adsh_status s) {
    switch (s) {
        case ADSH_OK: return "ok";
        case ADSH_INVALID_ARGUMENT: return "invalid_argument";
        case ADSH_NON_CONVERGENCE: return "non_convergence";
        case ADSH_DEGENERATE: return "degenerate_configuration";
        case ADSH_EXTRAPOLATION_UNSTABLE: return "extrapolation_unstable";
        case ADSH_POLE_ON_BOUNDARY: return "pole_on_boundary";
        case ADSH_IO: return "io_error";
        case ADSH_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* adsh_last_error_message(void) { return last_error.c_str(); }

adsh_status adsh_parse_boundary(const char* name, int* zeta) {
    return guarded([&] {
        require(name, "name");
        require(zeta, "zeta");
        *zeta = static_cast<int>(adsh::parse_boundary(name));
    });
}

adsh_status adsh_proper_distance(double ell, double r1, double r2, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = adsh::proper_distance(adsh::AdsLength(ell), adsh::RadialPosition(r1), adsh::RadialPosition(r2));
    });
}

adsh_status adsh_radius_from_proper_distance(double ell, double d, double* r_over_ell) {
    return guarded([&] {
        require(r_over_ell, "out");
        *r_over_ell = adsh::radius_from_proper_distance(adsh::AdsLength(ell), d).r_over_ell();
    });
}

adsh_status adsh_pair_create(adsh_trajectory kind, double ell, double gap, double d_origin, double separation,
                             double t0, int zeta, adsh_pair** out) {
    return guarded([&] {
        require(out, "out");
        *out = nullptr;
        auto cfg = adsh::PairConfig::from_distances(trajectory(kind), gap, adsh::AdsLength(ell), d_origin, separation,
                                                    t0, adsh::boundary_from_zeta(zeta));
        if (!std::isfinite(gap) || !std::isfinite(t0))
            throw adsh::Error(adsh::ErrorCode::InvalidArgument, "gap and delay must be finite");
        *out = new adsh_pair{cfg, {}};
    });
}

void adsh_pair_destroy(adsh_pair* pair) { delete pair; }

adsh_status adsh_pair_set_tolerance(adsh_pair* pair, double rel, double abs) {
    return guarded([&] {
        require(pair, "pair");
        adsh::Tolerance t = pair->tol;
        t.rel = rel;
        t.abs = abs;
        t.validate();
        pair->tol = t;
    });
}

adsh_status adsh_pair_evaluate(const adsh_pair* pair, adsh_harvest_result* out) {
    return guarded([&] {
        require(pair, "pair");
        require(out, "out");
        store(adsh::evaluate_pair(pair->config, pair->tol), out);
    });
}

adsh_status adsh_pair_evaluate_all(const adsh_pair* pair, adsh_harvest_result out[3]) {
    return guarded([&] {
        require(pair, "pair");
        require(out, "out");
        const auto parts = adsh::evaluate_pair_parts(pair->config, pair->tol);
        store(parts.combine(adsh::BoundaryCondition::Dirichlet), &out[0]);
        store(parts.combine(adsh::BoundaryCondition::Transparent), &out[1]);
        store(parts.combine(adsh::BoundaryCondition::Neumann), &out[2]);
    });
}

adsh_status adsh_transition_probability(adsh_trajectory kind, double ell, double gap, double d_origin, int zeta,
                                        double rel_tol, double* p, double* err) {
    return guarded([&] {
        require(p, "p");
        adsh::Tolerance tol;
        if (rel_tol > 0.0) tol.rel = rel_tol;
        const adsh::AdsLength l(ell);
        const auto bc = adsh::boundary_from_zeta(zeta);
        adsh::Estimate<double> r;
        if (trajectory(kind) == adsh::TrajectoryType::Circular) {
            r = adsh::transition_probability_circular(gap, l, bc, tol);
        } else {
            r = adsh::transition_probability_static({gap, adsh::radius_from_proper_distance(l, d_origin)}, l, bc, tol);
        }
        *p = r.value;
        if (err) *err = r.error;
    });
}

adsh_status adsh_concurrence(double p_a, double p_b, double re_x, double im_x, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = adsh::concurrence(p_a, p_b, {re_x, im_x});
    });
}

adsh_status adsh_flat_transition_probability(double gap, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = adsh::flat_transition_probability(gap);
    });
}

adsh_status adsh_flat_matrix_element_x(double gap, double separation, double* re, double* im) {
    return guarded([&] {
        require(re, "re");
        require(im, "im");
        const auto x = adsh::flat_matrix_element_x({gap, separation});
        *re = x.real();
        *im = x.imag();
    });
}

adsh_status adsh_flat_concurrence(double gap, double separation, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = adsh::flat_concurrence({gap, separation});
    });
}

adsh_status adsh_perturbative_transition_probability(double gap, double ell, int zeta, double d_origin, int order,
                                                     double* out) {
    return guarded([&] {
        require(out, "out");
        *out = adsh::perturbative_transition_probability(gap, ell, adsh::boundary_from_zeta(zeta), d_origin, order);
    });
}

adsh_status adsh_oracle_transition_probability(adsh_field field, adsh_contour contour, adsh_trajectory kind,
                                               double ell, double gap, double d_origin, int zeta,
                                               adsh_oracle_result* out) {
    return guarded([&] {
        require(out, "out");
        const auto ev = evaluator(field, ell, zeta);
        const auto r = adsh::oracle_transition_probability(gap, oracle_traj(field, kind, ell, d_origin), ev, grid(contour));
        *out = {r.value, 0.0, r.error, r.fit_residual};
    });
}

adsh_status adsh_oracle_matrix_element_x(adsh_field field, adsh_contour contour, adsh_trajectory kind, double ell,
                                         double gap, double d_origin, double separation, double t0, int zeta,
                                         adsh_oracle_result* out) {
    return guarded([&] {
        require(out, "out");
        if (!(separation > 0.0))
            throw adsh::Error(adsh::ErrorCode::DegenerateConfiguration, "oracle matrix element needs separated detectors");
        const auto ev = evaluator(field, ell, zeta);
        adsh::OraclePair p;
        p.a = {oracle_traj(field, kind, ell, d_origin), -0.5 * t0};
        p.b = {oracle_traj(field, kind, ell, d_origin + separation), 0.5 * t0};
        p.gap = gap;
        const auto r = adsh::oracle_matrix_element_x(p, ev, grid(contour));
        *out = {r.value.real(), r.value.imag(), r.error, r.fit_residual};
    });
}

adsh_status adsh_sweep_create(const char* scenario, adsh_sweep** out) {
    return guarded([&] {
        require(scenario, "scenario");
        require(out, "out");
        *out = nullptr;
        adsh::SweepSpec spec;
        spec.scenario = adsh::parse_scenario(scenario);
        *out = new adsh_sweep{spec};
    });
}

void adsh_sweep_destroy(adsh_sweep* sweep) { delete sweep; }

adsh_status adsh_sweep_add_axis(adsh_sweep* sweep, const char* axis, double min, double max, int count,
                                int log_spacing) {
    return guarded([&] {
        require(sweep, "sweep");
        require(axis, "axis");
        adsh::Axis a{adsh::parse_axis_name(axis), min, max, count, log_spacing != 0};
        a.validate();
        if (sweep->spec.axes.size() >= 2) throw adsh::Error(adsh::ErrorCode::InvalidArgument, "at most two axes");
        for (const auto& b : sweep->spec.axes)
            if (b.name == a.name) throw adsh::Error(adsh::ErrorCode::InvalidArgument, "axis given twice");
        sweep->spec.axes.push_back(a);
    });
}

adsh_status adsh_sweep_add_axis_spec(adsh_sweep* sweep, const char* axis, const char* spec) {
    return guarded([&] {
        require(spec, "spec");
        require(axis, "axis");
        const auto a = adsh::parse_axis(adsh::parse_axis_name(axis), spec);
        const adsh_status s = adsh_sweep_add_axis(sweep, axis, a.min, a.max, a.count, a.log_spacing ? 1 : 0);
        if (s != ADSH_OK) throw adsh::Error(adsh::ErrorCode::InvalidArgument, last_error);
    });
}

adsh_status adsh_sweep_set_fixed(adsh_sweep* sweep, const char* param, double value) {
    return guarded([&] {
        require(sweep, "sweep");
        require(param, "param");
        sweep->spec.fixed.set(adsh::parse_axis_name(param), value);
    });
}

adsh_status adsh_sweep_set_zeta(adsh_sweep* sweep, const char* zeta) {
    return guarded([&] {
        require(sweep, "sweep");
        require(zeta, "zeta");
        if (std::string(zeta) == "all") {
            sweep->spec.zetas = {adsh::BoundaryCondition::Dirichlet, adsh::BoundaryCondition::Transparent,
                                 adsh::BoundaryCondition::Neumann};
        } else {
            sweep->spec.zetas = {adsh::parse_boundary(zeta)};
        }
    });
}

adsh_status adsh_sweep_set_tolerance(adsh_sweep* sweep, double rel) {
    return guarded([&] {
        require(sweep, "sweep");
        adsh::Tolerance t = sweep->spec.tol;
        t.rel = rel;
        t.validate();
        sweep->spec.tol = t;
    });
}

adsh_status adsh_sweep_set_perturbative_order(adsh_sweep* sweep, int order) {
    return guarded([&] {
        require(sweep, "sweep");
        if (order < 0 || order > 4) throw adsh::Error(adsh::ErrorCode::InvalidArgument, "order must lie in [0, 4]");
        sweep->spec.perturbative_order = order;
    });
}

adsh_status adsh_sweep_row_count(const adsh_sweep* sweep, size_t* out) {
    return guarded([&] {
        require(sweep, "sweep");
        require(out, "out");
        *out = sweep->spec.row_count();
    });
}

adsh_status adsh_sweep_run(const adsh_sweep* sweep, const char* out_path, const char* format, int resume,
                           long stop_after, int jobs, adsh_sweep_summary* summary) {
    return guarded([&] {
        require(sweep, "sweep");
        require(out_path, "out_path");
        adsh::RunOptions opt;
        opt.out_path = out_path;
        opt.format = adsh::parse_format(format ? format : "csv");
        opt.resume = resume != 0;
        opt.stop_after = stop_after;
        opt.jobs = jobs;
        const auto s = adsh::run_sweep(sweep->spec, opt);
        if (summary)
            *summary = {s.rows_total, s.rows_skipped, s.rows_written, s.rows_failed, s.wall_seconds, s.complete ? 1 : 0};
    });
}

adsh_status adsh_sweep_write_plot(const adsh_sweep* sweep, const char* data_file, const char* data_path,
                                  const char* script_path, const char* kind) {
    return guarded([&] {
        require(sweep, "sweep");
        require(data_file, "data_file");
        require(script_path, "script_path");
        const std::string k = kind ? kind : "auto";
        const adsh::PlotKind pk = k == "auto" ? (sweep->spec.axes.size() == 2 ? adsh::PlotKind::Density
                                                                              : adsh::PlotKind::Line)
                                              : adsh::parse_plot_kind(k);
        const auto records = adsh::read_records(data_file, adsh::OutputFormat::Csv);
        const auto text = adsh::plot_script(sweep->spec, records, data_path ? data_path : data_file, pk);
        std::ofstream out(script_path, std::ios::binary | std::ios::trunc);
        out << text;
        if (!out) throw adsh::Error(adsh::ErrorCode::Io, std::string("cannot write '") + script_path + "'");
    });
}

}  // extern "C"
