#include "adsharvest/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "adsharvest/brute_oracle.hpp"
#include "adsharvest/oracles.hpp"

namespace adsh {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Named {
    const char* name;
    int value;
};

template <std::size_t N>
int lookup(const Named (&table)[N], std::string_view s, const char* what) {
    for (const auto& e : table)
        if (s == e.name) return e.value;
    throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

const Named scenario_names[] = {
    {"static-P", static_cast<int>(Scenario::StaticP)},
    {"static-harvest", static_cast<int>(Scenario::StaticHarvest)},
    {"circular-harvest", static_cast<int>(Scenario::CircularHarvest)},
    {"flat", static_cast<int>(Scenario::Flat)},
    {"perturbative", static_cast<int>(Scenario::Perturbative)},
    {"oracle-compare", static_cast<int>(Scenario::OracleCompare)},
};

const Named axis_names[] = {
    {"ell", static_cast<int>(AxisName::Ell)},
    {"gap", static_cast<int>(AxisName::Gap)},
    {"separation", static_cast<int>(AxisName::Separation)},
    {"delay", static_cast<int>(AxisName::Delay)},
    {"origin_offset", static_cast<int>(AxisName::OriginOffset)},
};

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// CSV column of each axis, 1-based
int axis_column(AxisName a) {
    switch (a) {
        case AxisName::Ell: return 3;
        case AxisName::Gap: return 4;
        case AxisName::Separation: return 5;
        case AxisName::Delay: return 6;
        case AxisName::OriginOffset: return 7;
    }
    return 3;
}

const char* axis_label(AxisName a) {
    switch (a) {
        case AxisName::Ell: return "ell/sigma";
        case AxisName::Gap: return "Omega sigma";
        case AxisName::Separation: return "d/sigma";
        case AxisName::Delay: return "t0/sigma";
        case AxisName::OriginOffset: return "d(0,R_A)/sigma";
    }
    return "";
}

void fill(SweepRecord& r, const HarvestResult& h) {
    r.p_a = h.p_a;
    r.p_b = h.p_b;
    r.re_x = h.x.real();
    r.im_x = h.x.imag();
    r.abs_x = std::abs(h.x);
    r.concurrence = h.concurrence;
    r.clamp_flag = static_cast<int>(h.clamp);
    r.err_p_a = h.err_p_a;
    r.err_p_b = h.err_p_b;
    r.err_x = h.err_x;
}

std::string status_of(const std::exception& e) {
    if (auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
    return "internal";
}

bool within(double a, double b, double rel, double err) { return std::abs(a - b) <= rel * std::abs(b) + err; }

void oracle_row(SweepRecord& r, const FixedParams& q, const Tolerance& tol) {
    const auto cfg = PairConfig::from_distances(TrajectoryType::Static, q.gap, AdsLength(q.ell), q.origin_offset,
                                                q.separation, q.delay, r.zeta);
    const auto core = evaluate_pair(cfg, tol);
    const auto pair = cfg.static_pair();
    WightmanEvaluator ev;
    ev.ell = cfg.ell;
    ev.zeta = r.zeta;
    const auto pa = oracle_transition_probability(q.gap, oracle_trajectory(pair.detector_a, cfg.ell), ev);
    const auto pb = oracle_transition_probability(q.gap, oracle_trajectory(pair.detector_b, cfg.ell), ev);
    const auto x = oracle_matrix_element_x(oracle_pair(pair), ev);
    fill(r, assemble({pa.value, pa.error}, {pb.value, pb.error}, {x.value, x.error}));
    const bool agree = within(pa.value, core.p_a, 1e-6, pa.error + core.err_p_a) &&
                       within(pb.value, core.p_b, 1e-6, pb.error + core.err_p_b) &&
                       std::abs(x.value - core.x) <= 1e-5 * std::abs(core.x) + x.error + core.err_x;
    if (!agree) r.status = "mismatch";
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
    for (const auto& e : scenario_names)
        if (e.value == static_cast<int>(s)) return e.name;
    return "unknown";
}

std::string_view to_string(AxisName a) noexcept {
    for (const auto& e : axis_names)
        if (e.value == static_cast<int>(a)) return e.name;
    return "unknown";
}

Scenario parse_scenario(std::string_view s) { return static_cast<Scenario>(lookup(scenario_names, s, "scenario")); }
AxisName parse_axis_name(std::string_view s) { return static_cast<AxisName>(lookup(axis_names, s, "axis")); }

OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    throw Error(ErrorCode::InvalidArgument, "unknown output format '" + std::string(s) + "'");
}

PlotKind parse_plot_kind(std::string_view s) {
    if (s == "line") return PlotKind::Line;
    if (s == "density") return PlotKind::Density;
    throw Error(ErrorCode::InvalidArgument, "unknown plot kind '" + std::string(s) + "'");
}

void Axis::validate() const {
    const std::string n(to_string(name));
    if (count < 2) throw Error(ErrorCode::InvalidArgument, "axis " + n + ": count must be at least 2");
    if (!std::isfinite(min) || !std::isfinite(max)) throw Error(ErrorCode::InvalidArgument, "axis " + n + ": bounds must be finite");
    if (log_spacing && !(min > 0.0 && max > 0.0))
        throw Error(ErrorCode::InvalidArgument, "axis " + n + ": log spacing needs positive bounds");
    if (name == AxisName::Ell && !(min > 0.0 && max > 0.0))
        throw Error(ErrorCode::InvalidArgument, "axis ell: values must be positive");
    if ((name == AxisName::Separation || name == AxisName::OriginOffset) && !(min >= 0.0 && max >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "axis " + n + ": distances must be non-negative");
}

std::vector<double> Axis::values() const {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) {
        const double f = static_cast<double>(k) / (count - 1);
        v[k] = log_spacing ? std::exp(std::log(min) + f * (std::log(max) - std::log(min))) : min + f * (max - min);
    }
    v.front() = min;
    v.back() = max;
    return v;
}

Axis parse_axis(AxisName name, std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() < 3 || parts.size() > 4)
        throw Error(ErrorCode::InvalidArgument, "axis spec must be min:max:count[:log], got '" + std::string(text) + "'");
    Axis a;
    a.name = name;
    try {
        std::size_t used = 0;
        a.min = std::stod(parts[0], &used);
        if (used != parts[0].size()) throw std::invalid_argument("min");
        a.max = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("max");
        a.count = std::stoi(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("count");
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse axis spec '" + std::string(text) + "'");
    }
    if (parts.size() == 4) {
        if (parts[3] == "log") a.log_spacing = true;
        else if (parts[3] != "lin") throw Error(ErrorCode::InvalidArgument, "axis spacing must be 'lin' or 'log'");
    }
    a.validate();
    return a;
}

double FixedParams::get(AxisName a) const {
    switch (a) {
        case AxisName::Ell: return ell;
        case AxisName::Gap: return gap;
        case AxisName::Separation: return separation;
        case AxisName::Delay: return delay;
        case AxisName::OriginOffset: return origin_offset;
    }
    return nan;
}

void FixedParams::set(AxisName a, double v) {
    switch (a) {
        case AxisName::Ell: ell = v; break;
        case AxisName::Gap: gap = v; break;
        case AxisName::Separation: separation = v; break;
        case AxisName::Delay: delay = v; break;
        case AxisName::OriginOffset: origin_offset = v; break;
    }
}

void SweepSpec::validate() const {
    if (axes.size() > 2) throw Error(ErrorCode::InvalidArgument, "a sweep has at most two axes");
    for (const auto& a : axes) a.validate();
    if (axes.size() == 2 && axes[0].name == axes[1].name)
        throw Error(ErrorCode::InvalidArgument, "the two sweep axes must differ");
    if (zetas.empty()) throw Error(ErrorCode::InvalidArgument, "at least one boundary condition is required");
    tol.validate();
    if (!(fixed.ell > 0.0) || !std::isfinite(fixed.ell)) throw Error(ErrorCode::InvalidArgument, "ell must be positive");
    if (!(fixed.separation >= 0.0) || !(fixed.origin_offset >= 0.0))
        throw Error(ErrorCode::InvalidArgument, "distances must be non-negative");
    if (!std::isfinite(fixed.gap) || !std::isfinite(fixed.delay))
        throw Error(ErrorCode::InvalidArgument, "gap and delay must be finite");
    if (perturbative_order < 0 || perturbative_order > 4)
        throw Error(ErrorCode::InvalidArgument, "perturbative order must lie in [0, 4]");
}

std::size_t SweepSpec::point_count() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

FixedParams SweepSpec::point(std::size_t index) const {
    FixedParams q = fixed;
    if (axes.size() == 1) {
        q.set(axes[0].name, axes[0].values()[index]);
    } else if (axes.size() == 2) {
        const std::size_t inner = static_cast<std::size_t>(axes[1].count);
        q.set(axes[0].name, axes[0].values()[index / inner]);
        q.set(axes[1].name, axes[1].values()[index % inner]);
    }
    return q;
}

SweepRecord::SweepRecord()
    : p_a(nan), p_b(nan), re_x(nan), im_x(nan), abs_x(nan), concurrence(nan), err_p_a(nan), err_p_b(nan), err_x(nan) {}

std::vector<SweepRecord> evaluate_point(const SweepSpec& spec, std::size_t index) {
    const auto start = std::chrono::steady_clock::now();
    const FixedParams q = spec.point(index);
    std::vector<SweepRecord> rows(spec.zetas.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        rows[k].scenario = spec.scenario;
        rows[k].zeta = spec.zetas[k];
        rows[k].params = q;
    }
    auto reset = [&](SweepRecord& r, const std::string& status) {
        const auto z = r.zeta;
        r = SweepRecord{};
        r.scenario = spec.scenario;
        r.zeta = z;
        r.params = q;
        r.status = status;
    };
    // each row is computed under its own guard; shared pieces fail every row
    auto per_row = [&](auto&& body) {
        for (auto& r : rows) {
            try {
                body(r);
            } catch (const std::exception& e) {
                reset(r, status_of(e));
            }
        }
    };
    try {
        switch (spec.scenario) {
            case Scenario::StaticP: {
                const AdsLength ell(q.ell);
                const StaticDetector det{q.gap, radius_from_proper_distance(ell, q.origin_offset)};
                const auto parts = transition_parts_static(det, ell, spec.tol);
                per_row([&](SweepRecord& r) {
                    const auto p = parts.combine(r.zeta);
                    r.p_a = p.value;
                    r.err_p_a = p.error;
                });
                break;
            }
            case Scenario::StaticHarvest:
            case Scenario::CircularHarvest: {
                const auto kind =
                    spec.scenario == Scenario::StaticHarvest ? TrajectoryType::Static : TrajectoryType::Circular;
                const auto cfg = PairConfig::from_distances(kind, q.gap, AdsLength(q.ell), q.origin_offset,
                                                            q.separation, q.delay, BoundaryCondition::Transparent);
                const auto parts = evaluate_pair_parts(cfg, spec.tol);
                per_row([&](SweepRecord& r) { fill(r, parts.combine(r.zeta)); });
                break;
            }
            case Scenario::Flat: {
                const double p = flat_transition_probability(q.gap);
                const cplx x = flat_matrix_element_x({q.gap, q.separation});
                per_row([&](SweepRecord& r) { fill(r, assemble({p, 0.0}, {p, 0.0}, {x, 0.0})); });
                break;
            }
            case Scenario::Perturbative:
                per_row([&](SweepRecord& r) {
                    r.p_a = perturbative_transition_probability(q.gap, q.ell, r.zeta, q.origin_offset,
                                                                spec.perturbative_order);
                    r.p_b = perturbative_transition_probability(q.gap, q.ell, r.zeta, q.origin_offset + q.separation,
                                                                spec.perturbative_order);
                });
                break;
            case Scenario::OracleCompare:
                per_row([&](SweepRecord& r) { oracle_row(r, q, spec.tol); });
                break;
        }
    } catch (const std::exception& e) {
        for (auto& r : rows) reset(r, status_of(e));
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) r.wall_seconds = wall;
    return rows;
}

std::string csv_header() {
    return "scenario,zeta,ell_over_sigma,omega_sigma,d_over_sigma,t0_over_sigma,d_origin_over_sigma,p_a,p_b,re_x,"
           "im_x,abs_x,concurrence,clamp_flag,err_p_a,err_p_b,err_x,status";
}

std::string format_row(const SweepRecord& r, OutputFormat fmt) {
    const auto& q = r.params;
    const int z = static_cast<int>(r.zeta);
    if (fmt == OutputFormat::Csv) {
        std::string s;
        s += std::string(to_string(r.scenario)) + ',' + std::to_string(z);
        for (double v : {q.ell, q.gap, q.separation, q.delay, q.origin_offset, r.p_a, r.p_b, r.re_x, r.im_x, r.abs_x,
                         r.concurrence})
            s += ',' + num(v);
        s += ',' + (r.clamp_flag < 0 ? std::string("nan") : std::to_string(r.clamp_flag));
        for (double v : {r.err_p_a, r.err_p_b, r.err_x}) s += ',' + num(v);
        s += ',' + r.status;
        return s;
    }
    nlohmann::ordered_json j;
    auto put = [&](const char* key, double v) {
        if (std::isnan(v)) j[key] = nullptr;
        else j[key] = v;
    };
    j["scenario"] = std::string(to_string(r.scenario));
    j["zeta"] = z;
    put("ell_over_sigma", q.ell);
    put("omega_sigma", q.gap);
    put("d_over_sigma", q.separation);
    put("t0_over_sigma", q.delay);
    put("d_origin_over_sigma", q.origin_offset);
    put("p_a", r.p_a);
    put("p_b", r.p_b);
    put("re_x", r.re_x);
    put("im_x", r.im_x);
    put("abs_x", r.abs_x);
    put("concurrence", r.concurrence);
    if (r.clamp_flag < 0) j["clamp_flag"] = nullptr;
    else j["clamp_flag"] = r.clamp_flag;
    put("err_p_a", r.err_p_a);
    put("err_p_b", r.err_p_b);
    put("err_x", r.err_x);
    j["status"] = r.status;
    return j.dump();
}

namespace {

SweepRecord parse_csv_line(const std::string& line) {
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            f.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    f.push_back(cur);
    if (f.size() != 18) throw Error(ErrorCode::Io, "malformed CSV row: " + line);
    auto d = [&](std::size_t i) { return std::strtod(f[i].c_str(), nullptr); };
    SweepRecord r;
    r.scenario = parse_scenario(f[0]);
    r.zeta = boundary_from_zeta(std::stoi(f[1]));
    r.params = {d(2), d(3), d(4), d(5), d(6)};
    r.p_a = d(7);
    r.p_b = d(8);
    r.re_x = d(9);
    r.im_x = d(10);
    r.abs_x = d(11);
    r.concurrence = d(12);
    r.clamp_flag = f[13] == "nan" ? -1 : std::stoi(f[13]);
    r.err_p_a = d(14);
    r.err_p_b = d(15);
    r.err_x = d(16);
    r.status = f[17];
    return r;
}

SweepRecord parse_json_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::Io, "malformed JSON row: " + line);
    }
    auto d = [&](const char* k) { return j.at(k).is_null() ? nan : j.at(k).get<double>(); };
    SweepRecord r;
    try {
        r.scenario = parse_scenario(j.at("scenario").get<std::string>());
        r.zeta = boundary_from_zeta(j.at("zeta").get<int>());
        r.params = {d("ell_over_sigma"), d("omega_sigma"), d("d_over_sigma"), d("t0_over_sigma"),
                    d("d_origin_over_sigma")};
        r.p_a = d("p_a");
        r.p_b = d("p_b");
        r.re_x = d("re_x");
        r.im_x = d("im_x");
        r.abs_x = d("abs_x");
        r.concurrence = d("concurrence");
        r.clamp_flag = j.at("clamp_flag").is_null() ? -1 : j.at("clamp_flag").get<int>();
        r.err_p_a = d("err_p_a");
        r.err_p_b = d("err_p_b");
        r.err_x = d("err_x");
        r.status = j.at("status").get<std::string>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::Io, "malformed JSON row: " + line);
    }
    return r;
}

bool same_inputs(const SweepRecord& a, const SweepRecord& b) {
    return a.scenario == b.scenario && a.zeta == b.zeta && a.params.ell == b.params.ell &&
           a.params.gap == b.params.gap && a.params.separation == b.params.separation &&
           a.params.delay == b.params.delay && a.params.origin_offset == b.params.origin_offset;
}

// complete rows already in the file; a partial trailing line is cut off
std::size_t prepare_resume(const SweepSpec& spec, const RunOptions& opt) {
    namespace fs = std::filesystem;
    std::string content;
    {
        std::ifstream in(opt.out_path, std::ios::binary);
        if (!in) throw Error(ErrorCode::Io, "cannot read '" + opt.out_path + "' for resume");
        std::ostringstream ss;
        ss << in.rdbuf();
        content = ss.str();
    }
    const auto last_nl = content.rfind('\n');
    const std::size_t keep = last_nl == std::string::npos ? 0 : last_nl + 1;
    if (keep != content.size()) {
        std::error_code ec;
        fs::resize_file(opt.out_path, keep, ec);
        if (ec) throw Error(ErrorCode::Io, "cannot truncate '" + opt.out_path + "': " + ec.message());
        content.resize(keep);
    }
    std::istringstream lines(content);
    std::string line;
    std::size_t rows = 0;
    bool header_seen = false;
    const std::size_t nz = spec.zetas.size();
    while (std::getline(lines, line)) {
        if (opt.format == OutputFormat::Csv && !header_seen) {
            if (line != csv_header()) throw Error(ErrorCode::Io, "'" + opt.out_path + "' has a different header");
            header_seen = true;
            continue;
        }
        const auto rec = opt.format == OutputFormat::Csv ? parse_csv_line(line) : parse_json_line(line);
        if (rows >= spec.row_count()) throw Error(ErrorCode::Io, "'" + opt.out_path + "' has more rows than the sweep");
        SweepRecord expect;
        expect.scenario = spec.scenario;
        expect.zeta = spec.zetas[rows % nz];
        expect.params = spec.point(rows / nz);
        if (!same_inputs(rec, expect))
            throw Error(ErrorCode::Io, "'" + opt.out_path + "' was written by a different sweep (row " +
                                           std::to_string(rows + 1) + ")");
        ++rows;
    }
    if (opt.format == OutputFormat::Csv && !header_seen) {
        std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
        out << csv_header() << '\n';
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + opt.out_path + "'");
    }
    return rows;
}

}  // namespace

std::vector<SweepRecord> read_records(const std::string& path, OutputFormat fmt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
    std::vector<SweepRecord> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (fmt == OutputFormat::Csv && first) {
            first = false;
            if (line != csv_header()) throw Error(ErrorCode::Io, "'" + path + "' is not a sweep CSV file");
            continue;
        }
        out.push_back(fmt == OutputFormat::Csv ? parse_csv_line(line) : parse_json_line(line));
    }
    return out;
}

RunSummary run_sweep(const SweepSpec& spec, const RunOptions& opt) {
    spec.validate();
    if (opt.out_path.empty()) throw Error(ErrorCode::InvalidArgument, "an output path is required");
    const auto start = std::chrono::steady_clock::now();
    RunSummary sum;
    sum.rows_total = spec.row_count();

    const bool exists = std::filesystem::exists(opt.out_path);
    if (opt.resume && exists) {
        sum.rows_skipped = prepare_resume(spec, opt);
    } else {
        std::ofstream out(opt.out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorCode::Io, "cannot write '" + opt.out_path + "'");
        if (opt.format == OutputFormat::Csv) out << csv_header() << '\n';
    }
    std::ofstream out(opt.out_path, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::Io, "cannot append to '" + opt.out_path + "'");

    const std::size_t nz = spec.zetas.size();
    const std::size_t points = spec.point_count();
    const std::size_t first_point = sum.rows_skipped / nz;
    std::size_t skip_rows = sum.rows_skipped % nz;

    int jobs = opt.jobs > 0 ? opt.jobs : static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::max<std::size_t>(1, points - first_point))));

    std::mutex m;
    std::condition_variable cv;
    std::map<std::size_t, std::vector<SweepRecord>> ready;
    std::atomic<std::size_t> next{first_point};
    std::atomic<bool> stop{false};

    auto worker = [&] {
        while (!stop.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points) break;
            auto rows = evaluate_point(spec, i);
            {
                std::lock_guard<std::mutex> lk(m);
                ready.emplace(i, std::move(rows));
            }
            cv.notify_all();
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);

    bool limit_hit = false;
    for (std::size_t i = first_point; i < points && !limit_hit; ++i) {
        std::vector<SweepRecord> rows;
        {
            std::unique_lock<std::mutex> lk(m);
            cv.wait(lk, [&] { return ready.count(i) > 0; });
            rows = std::move(ready[i]);
            ready.erase(i);
        }
        for (std::size_t k = skip_rows; k < rows.size(); ++k) {
            if (opt.stop_after >= 0 && sum.rows_written >= static_cast<std::size_t>(opt.stop_after)) {
                limit_hit = true;
                break;
            }
            out << format_row(rows[k], opt.format) << '\n';
            ++sum.rows_written;
            if (!rows[k].ok()) ++sum.rows_failed;
        }
        skip_rows = 0;
        out.flush();
        if (!out) {
            stop = true;
            for (auto& t : pool) t.join();
            throw Error(ErrorCode::Io, "write to '" + opt.out_path + "' failed");
        }
    }
    stop = true;
    for (auto& t : pool) t.join();
    sum.complete = sum.rows_skipped + sum.rows_written == sum.rows_total;
    sum.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return sum;
}

std::string plot_script(const SweepSpec& spec, const std::vector<SweepRecord>& records, const std::string& data_path,
                        PlotKind kind) {
    const std::size_t need = kind == PlotKind::Line ? 1 : 2;
    if (spec.axes.size() != need)
        throw Error(ErrorCode::InvalidArgument, kind == PlotKind::Line ? "line plots need exactly one sweep axis"
                                                                       : "density plots need exactly two sweep axes");
    const bool harvest = spec.scenario != Scenario::StaticP && spec.scenario != Scenario::Perturbative;
    const int ycol = harvest ? 13 : 8;
    const char* ylabel = harvest ? "C / lambda~^2" : "P_A / lambda~^2";
    bool any_zero = false;
    for (const auto& r : records)
        if (r.clamp_flag == static_cast<int>(ClampFlag::Clamped) || (harvest && r.concurrence == 0.0)) any_zero = true;

    std::ostringstream s;
    s << "# " << to_string(spec.scenario) << " sweep\n";
    s << "set datafile separator \",\"\n";
    s << "set datafile missing \"nan\"\n";
    const std::string data = "'" + data_path + "'";
    if (kind == PlotKind::Line) {
        const auto& ax = spec.axes[0];
        const int xcol = axis_column(ax.name);
        s << "set xlabel \"" << axis_label(ax.name) << "\"\n";
        s << "set ylabel \"" << ylabel << "\"\n";
        if (ax.log_spacing) s << "set logscale x\n";
        s << "set key top right\n";
        s << "plot";
        bool first = true;
        for (auto z : spec.zetas) {
            const int zi = static_cast<int>(z);
            s << (first ? " " : ", \\\n     ") << data << " skip 1 using (($2==" << zi << ") ? $" << xcol << " : NaN):"
              << ycol << " with linespoints title \"" << to_string(z) << "\"";
            first = false;
        }
        if (any_zero)
            s << ", \\\n     " << data << " skip 1 using (($14==1) ? $" << xcol
              << " : NaN):(0) with points pt 7 ps 0.6 lc rgb \"black\" title \"C = 0\"";
        s << "\n";
    } else {
        const auto& ax = spec.axes[0];
        const auto& ay = spec.axes[1];
        const int xcol = axis_column(ax.name), ycol2 = axis_column(ay.name);
        s << "set xlabel \"" << axis_label(ax.name) << "\"\n";
        s << "set ylabel \"" << axis_label(ay.name) << "\"\n";
        s << "set cblabel \"" << ylabel << "\"\n";
        if (ax.log_spacing) s << "set logscale x\n";
        if (ay.log_spacing) s << "set logscale y\n";
        s << "set palette rgb 33,13,10\n";
        s << "set multiplot layout 1," << spec.zetas.size() << "\n";
        for (auto z : spec.zetas) {
            const int zi = static_cast<int>(z);
            s << "set title \"" << to_string(z) << "\"\n";
            s << "plot " << data << " skip 1 using (($2==" << zi << ") ? $" << xcol << " : NaN):" << ycol2 << ":"
              << ycol << " with points pt 5 ps 1.5 palette notitle";
            if (any_zero)
                s << ", \\\n     " << data << " skip 1 using (($2==" << zi << " && $14==1) ? $" << xcol
                  << " : NaN):" << ycol2 << " with points pt 7 ps 0.4 lc rgb \"black\" notitle";
            s << "\n";
        }
        s << "unset multiplot\n";
    }
    return s.str();
}

}  // namespace adsh
