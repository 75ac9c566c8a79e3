#include "mfxpf/analysis.hpp"

#include "mfxpf/errors.hpp"
#include "mfxpf/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace mfxpf {

namespace {

using std::chrono::sys_days;
using std::chrono::year_month_day;
using std::chrono::years;

std::vector<double> diagonal_orders(const MomentGrid& grid)
{
    return grid.q_values;
}

AnalysisSummary summarize(const AnalysisResult& result)
{
    AnalysisSummary s;
    const MomentGrid& grid = result.surfaces.grid;
    s.tau00 = result.surfaces.tau_at(grid.p_zero_index(), grid.q_zero_index());
    s.max_abs_dtau = result.deviation.max_abs;

    s.max_f = -std::numeric_limits<double>::infinity();
    s.alpha_x_min = s.alpha_y_min = std::numeric_limits<double>::infinity();
    s.alpha_x_max = s.alpha_y_max = -std::numeric_limits<double>::infinity();
    s.min_r_squared = 1.0;
    for (std::size_t pi = 0; pi < grid.np(); ++pi) {
        for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
            const std::size_t c = grid.index(pi, qi);
            if (!std::isfinite(result.surfaces.tau[c])) {
                ++s.undefined_cells;
                continue;
            }
            s.min_r_squared = std::min(s.min_r_squared, result.surfaces.diagnostics[c].r_squared);
            const double f = result.surfaces.f[c];
            if (std::isfinite(f) && f > s.max_f) {
                s.max_f = f;
                s.max_f_p = grid.p_values[pi];
                s.max_f_q = grid.q_values[qi];
            }
            const double ax = result.surfaces.alpha_x[c];
            const double ay = result.surfaces.alpha_y[c];
            if (std::isfinite(ax)) {
                s.alpha_x_min = std::min(s.alpha_x_min, ax);
                s.alpha_x_max = std::max(s.alpha_x_max, ax);
            }
            if (std::isfinite(ay)) {
                s.alpha_y_min = std::min(s.alpha_y_min, ay);
                s.alpha_y_max = std::max(s.alpha_y_max, ay);
            }
        }
    }
    return s;
}

} // namespace

std::string method_name(Method method)
{
    switch (method) {
    case Method::BiOrder: return "bi-order";
    case Method::UniOrder: return "uni-order";
    case Method::Direct: return "direct";
    case Method::All: return "all";
    }
    return "all";
}

Method method_from_name(const std::string& name)
{
    if (name == "bi-order")
        return Method::BiOrder;
    if (name == "uni-order")
        return Method::UniOrder;
    if (name == "direct")
        return Method::Direct;
    if (name == "all")
        return Method::All;
    throw ParameterError("unknown method '" + name +
                         "' (expected bi-order, uni-order, direct or all)");
}

AnalysisResult analyze_pair(const Measure& mx, const Measure& my,
                            const AnalysisConfig& config)
{
    AnalysisResult result;
    result.config = config;
    const ScaleSet scales =
        config.scales ? *config.scales : ScaleSet::dyadic(mx.length());
    scales.validate(mx.length());

    const BoxSums boxes = integrate_boxes(mx, my, scales);
    const MomentSums sums = moment_sums(boxes, config.grid, config.max_zero_fraction);
    result.table = sums.table;

    result.surfaces = double_legendre(fit_tau(result.table, config.fit_range));
    result.deviation = monofractal_deviation(result.surfaces);

    if (config.method == Method::Direct || config.method == Method::All)
        result.direct = direct_estimates(sums, config.fit_range);

    if (config.method == Method::UniOrder || config.method == Method::All) {
        const UniMomentSums uni_sums =
            uni_moment_sums(boxes, diagonal_orders(config.grid), config.max_zero_fraction);
        result.uni_tau = fit_tau_uni(uni_sums, config.fit_range);
        result.uni = uni_legendre(result.uni_tau.tau, result.uni_tau.q_values);
        result.uni_direct = direct_uni(uni_sums, config.fit_range);
    }

    result.summary = summarize(result);
    return result;
}

void write_report_bundle(const std::filesystem::path& dir, const AnalysisResult& result,
                         const std::map<std::string, std::string>& provenance)
{
    std::filesystem::create_directories(dir);
    const MomentGrid& grid = result.surfaces.grid;

    write_partition_csv(dir / "chi.csv", result.table);
    write_partition_json(dir / "chi.json", result.table);
    write_matrix_csv(dir / "tau.csv", grid, result.surfaces.tau);
    write_matrix_csv(dir / "alpha_x.csv", grid, result.surfaces.alpha_x);
    write_matrix_csv(dir / "alpha_y.csv", grid, result.surfaces.alpha_y);
    write_matrix_csv(dir / "f.csv", grid, result.surfaces.f);
    write_spectrum_csv(dir / "spectrum.csv", to_spectrum(result.surfaces));
    write_matrix_csv(dir / "dtau.csv", grid, result.deviation.dtau);

    if (!result.direct.alpha_x.empty()) {
        write_matrix_csv(dir / "alpha_x_direct.csv", grid, result.direct.alpha_x);
        write_matrix_csv(dir / "alpha_y_direct.csv", grid, result.direct.alpha_y);
        write_matrix_csv(dir / "f_direct.csv", grid, result.direct.f);
    }

    if (!result.uni_tau.q_values.empty()) {
        std::ofstream out(dir / "uni.csv");
        out << "q,tau,alpha_xy,f,alpha_xy_direct,f_direct\n";
        char buf[160];
        for (std::size_t i = 0; i < result.uni_tau.q_values.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                          result.uni_tau.q_values[i], result.uni_tau.tau[i],
                          result.uni.alpha_xy[i], result.uni.f[i],
                          result.uni_direct.alpha_xy[i], result.uni_direct.f[i]);
            out << buf;
        }
    }

    nlohmann::json j;
    j["tau00"] = result.summary.tau00;
    j["max_f"] = result.summary.max_f;
    j["max_f_at"] = {result.summary.max_f_p, result.summary.max_f_q};
    j["max_abs_dtau"] = result.summary.max_abs_dtau;
    j["alpha_x_range"] = {result.summary.alpha_x_min, result.summary.alpha_x_max};
    j["alpha_y_range"] = {result.summary.alpha_y_min, result.summary.alpha_y_max};
    j["alpha_x_width"] = result.summary.alpha_x_max - result.summary.alpha_x_min;
    j["alpha_y_width"] = result.summary.alpha_y_max - result.summary.alpha_y_min;
    j["min_r_squared"] = result.summary.min_r_squared;
    j["undefined_cells"] = result.summary.undefined_cells;
    j["config"]["method"] = method_name(result.config.method);
    j["config"]["grid"]["max_order"] = result.surfaces.grid.p_values.back();
    j["config"]["grid"]["spacing"] = result.surfaces.grid.spacing;
    j["config"]["scales"] = result.table.scales;
    j["config"]["fit_range"] = {result.config.fit_range.s_min, result.config.fit_range.s_max};
    j["config"]["max_zero_fraction"] = result.config.max_zero_fraction;
    j["config"]["window_convention"] =
        "calendar windows step on exact calendar years over the timestamp column";
    j["zero_box_count"] = result.table.zero_box_count;
    for (const auto& [key, value] : provenance)
        j["provenance"][key] = value;

    std::ofstream out(dir / "summary.json");
    if (!out)
        throw DataError("cannot write " + (dir / "summary.json").string());
    out << j.dump(2) << '\n';
}

void WindowSpec::validate() const
{
    if (length == 0 || step == 0)
        throw ParameterError("window length and step must be positive");
    if (step > length)
        throw ParameterError("window step must not exceed the window length");
}

std::vector<WindowSlice> make_windows(const std::vector<year_month_day>& dates,
                                      const WindowSpec& spec)
{
    spec.validate();
    if (dates.empty())
        throw ParameterError("empty series");

    std::vector<WindowSlice> windows;
    if (spec.by_years) {
        const sys_days last{dates.back()};
        for (year_month_day start = dates.front();;) {
            const year_month_day stop{start.year() + years{spec.length},
                                      start.month(), start.day()};
            if (sys_days{stop} > last + std::chrono::days{1})
                break;
            WindowSlice slice;
            slice.label = format_date(start);
            slice.begin = static_cast<std::size_t>(
                std::lower_bound(dates.begin(), dates.end(), start,
                                 [](const year_month_day& a, const year_month_day& b) {
                                     return sys_days{a} < sys_days{b};
                                 }) -
                dates.begin());
            slice.end = static_cast<std::size_t>(
                std::lower_bound(dates.begin(), dates.end(), stop,
                                 [](const year_month_day& a, const year_month_day& b) {
                                     return sys_days{a} < sys_days{b};
                                 }) -
                dates.begin());
            windows.push_back(slice);
            start = year_month_day{start.year() + std::chrono::years{spec.step},
                                   start.month(), start.day()};
        }
    } else {
        for (std::size_t begin = 0; begin + spec.length <= dates.size();
             begin += spec.step) {
            WindowSlice slice;
            slice.begin = begin;
            slice.end = begin + spec.length;
            slice.label = format_date(dates[begin]);
            windows.push_back(slice);
        }
    }

    if (windows.empty())
        throw ParameterError("window is larger than the sample");
    for (const WindowSlice& w : windows)
        if (w.size() < kMinWindowSamples)
            throw ParameterError("window starting " + w.label + " has " +
                                 std::to_string(w.size()) + " samples; need >= " +
                                 std::to_string(kMinWindowSamples));
    return windows;
}

std::pair<PriceSeries, PriceSeries> align_by_dates(const PriceSeries& a,
                                                   const PriceSeries& b)
{
    PriceSeries out_a, out_b;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const sys_days da{a.dates[i]}, db{b.dates[j]};
        if (da < db) {
            ++i;
        } else if (db < da) {
            ++j;
        } else {
            out_a.dates.push_back(a.dates[i]);
            out_a.closes.push_back(a.closes[i]);
            out_b.dates.push_back(b.dates[j]);
            out_b.closes.push_back(b.closes[j]);
            ++i;
            ++j;
        }
    }
    if (out_a.size() < 2)
        throw DataError("series share fewer than 2 timestamps");
    return {std::move(out_a), std::move(out_b)};
}

SurfaceDiff compare_surfaces(const ExponentSurfaces& a, const ExponentSurfaces& b)
{
    if (a.grid.np() != b.grid.np() || a.grid.nq() != b.grid.nq())
        throw ParameterError("surface grids differ in shape");
    for (std::size_t i = 0; i < a.grid.np(); ++i)
        if (std::abs(a.grid.p_values[i] - b.grid.p_values[i]) > 1e-9)
            throw ParameterError("surface grids differ in p values");

    SurfaceDiff diff;
    const auto update = [](double& acc, double va, double vb) {
        if (std::isfinite(va) && std::isfinite(vb))
            acc = std::max(acc, std::abs(va - vb));
    };
    for (std::size_t c = 0; c < a.grid.cells(); ++c) {
        update(diff.max_tau, a.tau[c], b.tau[c]);
        update(diff.max_alpha_x, a.alpha_x[c], b.alpha_x[c]);
        update(diff.max_alpha_y, a.alpha_y[c], b.alpha_y[c]);
        update(diff.max_f, a.f[c], b.f[c]);
    }
    return diff;
}

} // namespace mfxpf
