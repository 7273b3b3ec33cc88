// adsharvest command line front end; talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adsharvest/adsharvest.h"

namespace {

struct Common {
    std::string trajectory = "static";
    double ell = 1.0;
    double gap = 1.0;
    double d_origin = 0.0;
    double separation = 1.0;
    double t0 = 0.0;
    std::string zeta = "all";
    double tol = 1e-10;
    std::string format = "csv";
};

std::string g17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int fail(adsh_status s) {
    std::fprintf(stderr, "error (%s): %s\n", adsh_status_string(s), adsh_last_error_message());
    return static_cast<int>(s) + 1;
}

std::vector<int> zetas(const std::string& z) {
    if (z == "all") return {1, 0, -1};
    int v = 0;
    if (adsh_parse_boundary(z.c_str(), &v) != ADSH_OK) throw CLI::ValidationError("--zeta", adsh_last_error_message());
    return {v};
}

adsh_trajectory trajectory(const std::string& t) {
    if (t == "static") return ADSH_STATIC;
    if (t == "circular") return ADSH_CIRCULAR;
    throw CLI::ValidationError("--trajectory", "must be static or circular");
}

// one output row: named columns, CSV with header or one JSON object per line
struct Table {
    bool json;
    std::vector<std::string> cols;
    bool header_done = false;

    void row(const std::vector<std::string>& vals) {
        if (json) {
            std::string s = "{";
            for (std::size_t i = 0; i < cols.size(); ++i) {
                const bool numeric = vals[i] != "nan" && !vals[i].empty() &&
                                     (std::isdigit(static_cast<unsigned char>(vals[i][0])) || vals[i][0] == '-');
                s += (i ? "," : "") + ("\"" + cols[i] + "\":") +
                     (vals[i] == "nan" ? "null" : numeric ? vals[i] : "\"" + vals[i] + "\"");
            }
            std::printf("%s}\n", s.c_str());
            return;
        }
        if (!header_done) {
            std::string h;
            for (std::size_t i = 0; i < cols.size(); ++i) h += (i ? "," : "") + cols[i];
            std::printf("%s\n", h.c_str());
            header_done = true;
        }
        std::string s;
        for (std::size_t i = 0; i < vals.size(); ++i) s += (i ? "," : "") + vals[i];
        std::printf("%s\n", s.c_str());
    }
};

int run_transition(const Common& c) {
    Table t{c.format == "json", {"trajectory", "zeta", "ell_over_sigma", "omega_sigma", "d_origin_over_sigma", "p",
                                 "err_p", "status"}};
    int rc = 0;
    for (int z : zetas(c.zeta)) {
        double p = NAN, err = NAN;
        const adsh_status s =
            adsh_transition_probability(trajectory(c.trajectory), c.ell, c.gap, c.d_origin, z, c.tol, &p, &err);
        if (s != ADSH_OK) {
            std::fprintf(stderr, "zeta=%d: %s\n", z, adsh_last_error_message());
            rc = 1;
            p = err = NAN;
        }
        t.row({c.trajectory, std::to_string(z), g17(c.ell), g17(c.gap), g17(c.d_origin), g17(p), g17(err),
               adsh_status_string(s)});
    }
    return rc;
}

int run_harvest(const Common& c) {
    Table t{c.format == "json",
            {"trajectory", "zeta", "ell_over_sigma", "omega_sigma", "d_over_sigma", "t0_over_sigma",
             "d_origin_over_sigma", "p_a", "p_b", "re_x", "im_x", "abs_x", "concurrence", "clamp_flag", "err_p_a",
             "err_p_b", "err_x", "err_concurrence", "status"}};
    int rc = 0;
    for (int z : zetas(c.zeta)) {
        adsh_pair* pair = nullptr;
        adsh_harvest_result r{};
        adsh_status s = adsh_pair_create(trajectory(c.trajectory), c.ell, c.gap, c.d_origin, c.separation, c.t0, z, &pair);
        if (s == ADSH_OK) s = adsh_pair_set_tolerance(pair, c.tol, 1e-14);
        if (s == ADSH_OK) s = adsh_pair_evaluate(pair, &r);
        adsh_pair_destroy(pair);
        std::vector<std::string> v{c.trajectory, std::to_string(z), g17(c.ell), g17(c.gap), g17(c.separation),
                                   g17(c.t0), g17(c.d_origin)};
        if (s == ADSH_OK) {
            for (double x : {r.p_a, r.p_b, r.re_x, r.im_x, std::hypot(r.re_x, r.im_x), r.concurrence}) v.push_back(g17(x));
            v.push_back(std::to_string(r.clamp_flag));
            for (double x : {r.err_p_a, r.err_p_b, r.err_x, r.err_concurrence}) v.push_back(g17(x));
        } else {
            std::fprintf(stderr, "zeta=%d: %s\n", z, adsh_last_error_message());
            rc = 1;
            v.insert(v.end(), 11, "nan");
        }
        v.push_back(adsh_status_string(s));
        t.row(v);
    }
    return rc;
}

struct OracleOpts {
    std::string quantity = "p";
    std::string field = "ads";
    std::string contour = "deformed";
    double rel = 1e-6;
};

int run_oracle(const Common& c, const OracleOpts& o) {
    const adsh_field field = o.field == "flat" ? ADSH_FIELD_FLAT : ADSH_FIELD_ADS;
    const adsh_contour contour = o.contour == "real-axis" ? ADSH_CONTOUR_REAL_AXIS : ADSH_CONTOUR_DEFORMED;
    Table t{c.format == "json", {"quantity", "field", "zeta", "re_core", "im_core", "re_oracle", "im_oracle",
                                 "oracle_error", "rel_diff", "status"}};
    int rc = 0;
    const std::vector<int> zs = field == ADSH_FIELD_FLAT ? std::vector<int>{0} : zetas(c.zeta);
    for (int z : zs) {
        double re = NAN, im = 0.0;
        adsh_oracle_result orc{NAN, NAN, NAN, NAN};
        adsh_status s;
        if (o.quantity == "p") {
            if (field == ADSH_FIELD_FLAT) s = adsh_flat_transition_probability(c.gap, &re);
            else s = adsh_transition_probability(trajectory(c.trajectory), c.ell, c.gap, c.d_origin, z, c.tol, &re, nullptr);
            if (s == ADSH_OK)
                s = adsh_oracle_transition_probability(field, contour, trajectory(c.trajectory), c.ell, c.gap,
                                                       c.d_origin, z, &orc);
        } else {
            if (field == ADSH_FIELD_FLAT) {
                s = adsh_flat_matrix_element_x(c.gap, c.separation, &re, &im);
            } else {
                adsh_pair* pair = nullptr;
                adsh_harvest_result r{};
                s = adsh_pair_create(trajectory(c.trajectory), c.ell, c.gap, c.d_origin, c.separation, c.t0, z, &pair);
                if (s == ADSH_OK) s = adsh_pair_evaluate(pair, &r);
                adsh_pair_destroy(pair);
                re = r.re_x;
                im = r.im_x;
            }
            if (s == ADSH_OK)
                s = adsh_oracle_matrix_element_x(field, contour, trajectory(c.trajectory), c.ell, c.gap, c.d_origin,
                                                 c.separation, c.t0, z, &orc);
        }
        std::string status = adsh_status_string(s);
        double rel = NAN;
        if (s == ADSH_OK) {
            rel = std::hypot(orc.re - re, orc.im - im) / std::hypot(re, im);
            if (!(rel <= o.rel || std::hypot(orc.re - re, orc.im - im) <= orc.error)) status = "mismatch";
        } else {
            std::fprintf(stderr, "zeta=%d: %s\n", z, adsh_last_error_message());
        }
        if (status != "ok") rc = 1;
        t.row({o.quantity, o.field, std::to_string(z), g17(re), g17(im), g17(orc.re), g17(orc.im), g17(orc.error),
               g17(rel), status});
    }
    return rc;
}

struct SweepOpts {
    std::string scenario = "static-harvest";
    std::vector<std::string> axes;
    std::string out;
    bool resume = false;
    long stop_after = -1;
    int jobs = 0;
    int order = 4;
    std::string plot = "auto";
    std::string plot_out;
};

int run_sweep(const Common& c, const SweepOpts& o) {
    adsh_sweep* sw = nullptr;
    adsh_status s = adsh_sweep_create(o.scenario.c_str(), &sw);
    if (s != ADSH_OK) return fail(s);
    auto check = [&](adsh_status st) {
        if (st != ADSH_OK) {
            adsh_sweep_destroy(sw);
            throw st;
        }
    };
    try {
        check(adsh_sweep_set_fixed(sw, "ell", c.ell));
        check(adsh_sweep_set_fixed(sw, "gap", c.gap));
        check(adsh_sweep_set_fixed(sw, "separation", c.separation));
        check(adsh_sweep_set_fixed(sw, "delay", c.t0));
        check(adsh_sweep_set_fixed(sw, "origin_offset", c.d_origin));
        for (const auto& a : o.axes) {
            const auto eq = a.find('=');
            if (eq == std::string::npos) {
                std::fprintf(stderr, "error: --axis expects name=min:max:count[:log], got '%s'\n", a.c_str());
                adsh_sweep_destroy(sw);
                return 2;
            }
            check(adsh_sweep_add_axis_spec(sw, a.substr(0, eq).c_str(), a.substr(eq + 1).c_str()));
        }
        check(adsh_sweep_set_zeta(sw, c.zeta.c_str()));
        check(adsh_sweep_set_tolerance(sw, c.tol));
        check(adsh_sweep_set_perturbative_order(sw, o.order));
        adsh_sweep_summary sum{};
        check(adsh_sweep_run(sw, o.out.c_str(), c.format.c_str(), o.resume ? 1 : 0, o.stop_after, o.jobs, &sum));
        std::fprintf(stderr, "rows: %zu total, %zu resumed, %zu written, %zu failed; %.2f s\n", sum.rows_total,
                     sum.rows_skipped, sum.rows_written, sum.rows_failed, sum.wall_seconds);
        if (o.plot != "none" && c.format == "csv" && o.axes.size() >= 1) {
            const std::string script = o.plot_out.empty() ? o.out + ".gp" : o.plot_out;
            // plot script sits next to the data file, so reference it by file name
            const auto slash = o.out.find_last_of('/');
            const std::string rel = slash == std::string::npos ? o.out : o.out.substr(slash + 1);
            check(adsh_sweep_write_plot(sw, o.out.c_str(), rel.c_str(), script.c_str(), o.plot.c_str()));
        } else if (o.plot != "none" && c.format != "csv" && o.axes.size() >= 1) {
            std::fprintf(stderr, "no plot script: gnuplot scripts are written for CSV output only\n");
        }
        adsh_sweep_destroy(sw);
        if (!sum.complete) return 3;
        return sum.rows_failed == 0 ? 0 : 1;
    } catch (adsh_status st) {
        return fail(st);
    }
}

void add_common(CLI::App* sub, Common& c, bool pair) {
    sub->add_option("--trajectory", c.trajectory, "static or circular")->check(CLI::IsMember({"static", "circular"}));
    sub->add_option("--ell", c.ell, "AdS length ell/sigma");
    sub->add_option("--gap", c.gap, "energy gap Omega sigma");
    sub->add_option("--d-origin", c.d_origin, "proper distance of detector A from the origin, d(0,R_A)/sigma");
    if (pair) {
        sub->add_option("--separation", c.separation, "proper separation d(R_A,R_B)/sigma");
        sub->add_option("--t0", c.t0, "time delay t0/sigma (B switches later for t0 > 0)");
    }
    sub->add_option("--zeta", c.zeta, "dirichlet, transparent, neumann or all")
        ->check(CLI::IsMember({"dirichlet", "transparent", "neumann", "all", "1", "0", "-1"}));
    sub->add_option("--tol", c.tol, "relative tolerance");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement harvesting by detector pairs in AdS3"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(adsh_version()));

    Common c;
    OracleOpts oo;
    SweepOpts so;

    auto* tr = app.add_subcommand("transition", "transition probability of one detector");
    add_common(tr, c, false);

    auto* hv = app.add_subcommand("harvest", "P_A, P_B, X and concurrence for a detector pair");
    add_common(hv, c, true);

    auto* oc = app.add_subcommand("oracle-check", "compare against brute-force integration of the Wightman function");
    add_common(oc, c, true);
    oc->add_option("--quantity", oo.quantity, "p or x")->check(CLI::IsMember({"p", "x"}));
    oc->add_option("--field", oo.field, "ads or flat")->check(CLI::IsMember({"ads", "flat"}));
    oc->add_option("--contour", oo.contour, "deformed or real-axis")->check(CLI::IsMember({"deformed", "real-axis"}));
    oc->add_option("--rel", oo.rel, "accepted relative difference");

    auto* sw = app.add_subcommand("sweep", "scan one or two parameters");
    add_common(sw, c, true);
    sw->add_option("--scenario", so.scenario, "static-P, static-harvest, circular-harvest, flat, perturbative, oracle-compare")
        ->check(CLI::IsMember({"static-P", "static-harvest", "circular-harvest", "flat", "perturbative", "oracle-compare"}));
    sw->add_option("--axis", so.axes, "name=min:max:count[:log], name in ell, gap, separation, delay, origin_offset")
        ->expected(1, 2);
    sw->add_option("--out", so.out, "output file")->required();
    sw->add_flag("--resume", so.resume, "keep complete rows of an interrupted run and append the rest");
    sw->add_option("--jobs", so.jobs, "worker threads, 0 = all cores");
    sw->add_option("--stop-after", so.stop_after, "stop after writing this many rows");
    sw->add_option("--order", so.order, "order of the perturbative series");
    sw->add_option("--plot", so.plot, "auto, line, density or none")->check(CLI::IsMember({"auto", "line", "density", "none"}));
    sw->add_option("--plot-out", so.plot_out, "plot script path (default <out>.gp)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (tr->parsed()) return run_transition(c);
        if (hv->parsed()) return run_harvest(c);
        if (oc->parsed()) return run_oracle(c, oo);
        if (sw->parsed()) return run_sweep(c, so);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    }
    return 0;
}
