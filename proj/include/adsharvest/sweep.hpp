#pragma once

// Parameter sweeps over one or two axes with ordered, resumable output.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "adsharvest/harvest.hpp"

namespace adsh {

enum class Scenario { StaticP, StaticHarvest, CircularHarvest, Flat, Perturbative, OracleCompare };
enum class AxisName { Ell, Gap, Separation, Delay, OriginOffset };
enum class OutputFormat { Csv, Json };
enum class PlotKind { Line, Density };

std::string_view to_string(Scenario s) noexcept;
std::string_view to_string(AxisName a) noexcept;
Scenario parse_scenario(std::string_view s);
AxisName parse_axis_name(std::string_view s);
OutputFormat parse_format(std::string_view s);
PlotKind parse_plot_kind(std::string_view s);

struct Axis {
    AxisName name = AxisName::Separation;
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log_spacing = false;

    void validate() const;
    std::vector<double> values() const;
};

/// "min:max:count" or "min:max:count:log"
Axis parse_axis(AxisName name, std::string_view text);

struct FixedParams {
    double ell = 1.0;
    double gap = 1.0;
    double separation = 1.0;  // d(R_A, R_B)
    double delay = 0.0;       // t0
    double origin_offset = 0.0;  // d(0, R_A)

    double get(AxisName a) const;
    void set(AxisName a, double v);
};

struct SweepSpec {
    Scenario scenario = Scenario::StaticHarvest;
    std::vector<Axis> axes;  // zero, one or two; first is the outer loop
    FixedParams fixed;
    std::vector<BoundaryCondition> zetas{BoundaryCondition::Dirichlet, BoundaryCondition::Transparent,
                                         BoundaryCondition::Neumann};
    Tolerance tol;
    int perturbative_order = 4;

    void validate() const;
    std::size_t point_count() const;
    std::size_t row_count() const { return point_count() * zetas.size(); }
    FixedParams point(std::size_t index) const;
};

struct SweepRecord {
    Scenario scenario = Scenario::StaticHarvest;
    BoundaryCondition zeta = BoundaryCondition::Transparent;
    FixedParams params;
    double p_a, p_b, re_x, im_x, abs_x, concurrence;
    int clamp_flag = -1;  // -1 when no concurrence was computed
    double err_p_a, err_p_b, err_x;
    std::string status = "ok";
    double wall_seconds = 0.0;  // never written to the data file

    SweepRecord();
    bool ok() const { return status == "ok"; }
};

/// All rows of one grid point, in the spec's zeta order.
std::vector<SweepRecord> evaluate_point(const SweepSpec& spec, std::size_t index);

std::string csv_header();
std::string format_row(const SweepRecord& r, OutputFormat fmt);
std::vector<SweepRecord> read_records(const std::string& path, OutputFormat fmt);

struct RunOptions {
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    bool resume = false;
    long stop_after = -1;  // stop once this many new rows are written; negative = no limit
    int jobs = 0;          // 0 = hardware concurrency
};

struct RunSummary {
    std::size_t rows_total = 0;
    std::size_t rows_skipped = 0;  // already present when resuming
    std::size_t rows_written = 0;
    std::size_t rows_failed = 0;
    double wall_seconds = 0.0;
    bool complete = false;
};

RunSummary run_sweep(const SweepSpec& spec, const RunOptions& opt);

/// gnuplot script reading `data_path` (relative to the script's directory).
/// Line plots need one axis, density plots two.
std::string plot_script(const SweepSpec& spec, const std::vector<SweepRecord>& records,
                        const std::string& data_path, PlotKind kind);

}  // namespace adsh
