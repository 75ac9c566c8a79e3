// Command-line front end: generation, analysis, moving windows, analytic
// surfaces, and surface comparison.

#include "mfxpf/analysis.hpp"
#include "mfxpf/bfbm.hpp"
#include "mfxpf/binomial.hpp"
#include "mfxpf/binomial_oracle.hpp"
#include "mfxpf/errors.hpp"
#include "mfxpf/io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace mfxpf;

MomentGrid parse_grid(const std::string& text)
{
    double max_order = 10.0, spacing = 0.1;
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            max_order = std::stod(text);
        } else {
            max_order = std::stod(text.substr(0, colon));
            spacing = std::stod(text.substr(colon + 1));
        }
    } catch (const std::exception&) {
        throw ParameterError("bad --grid '" + text + "' (want MAX or MAX:SPACING)");
    }
    return MomentGrid::symmetric(max_order, spacing);
}

std::optional<ScaleSet> parse_scales(const std::string& text)
{
    if (text.empty())
        return std::nullopt;
    ScaleSet set;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto comma = text.find(',', pos);
        const std::string field =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            set.scales.push_back(std::stoul(field));
        } catch (const std::exception&) {
            throw ParameterError("bad --scales entry '" + field + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return set;
}

FitRange parse_fit_range(const std::string& text)
{
    if (text.empty())
        return {};
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParameterError("bad --fit-range '" + text + "' (want SMIN:SMAX)");
    FitRange range;
    try {
        range.s_min = std::stoul(text.substr(0, colon));
        range.s_max = std::stoul(text.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParameterError("bad --fit-range '" + text + "'");
    }
    if (range.s_min == 0 || range.s_max < range.s_min)
        throw ParameterError("--fit-range needs 0 < SMIN <= SMAX");
    return range;
}

// Shared analysis options gathered from flags or the INI config file.
struct CommonOpts {
    std::string grid_text = "10:0.1";
    std::string scales_text;
    std::string fit_range_text;
    std::string method_text = "all";
    std::string out_dir = "out";

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--grid", grid_text, "moment grid MAX or MAX:SPACING")
            ->capture_default_str();
        cmd.add_option("--scales", scales_text, "comma-separated box sizes (cells)");
        cmd.add_option("--fit-range", fit_range_text, "regression scale window SMIN:SMAX");
        cmd.add_option("--method", method_text, "bi-order | uni-order | direct | all")
            ->capture_default_str();
        cmd.add_option("--out", out_dir, "output directory")->capture_default_str();
    }

    AnalysisConfig to_config() const
    {
        AnalysisConfig config;
        config.grid = parse_grid(grid_text);
        config.scales = parse_scales(scales_text);
        config.fit_range = parse_fit_range(fit_range_text);
        config.method = method_from_name(method_text);
        return config;
    }

    std::map<std::string, std::string> provenance() const
    {
        return {{"grid", grid_text},
                {"scales", scales_text.empty() ? "dyadic-default" : scales_text},
                {"fit_range", fit_range_text.empty() ? "all-scales" : fit_range_text},
                {"method", method_text}};
    }
};

// Load one input as a normalized measure. Kinds: measure (already
// normalized), values (normalized here), prices (date,close -> volatility
// -> normalized).
Measure load_measure(const std::string& path, const std::string& kind)
{
    if (kind == "measure")
        return Measure::from_values(read_value_csv(path));
    if (kind == "values")
        return series_to_measure(read_value_csv(path));
    if (kind == "prices")
        return series_to_measure(volatility_from_prices(read_price_csv(path)));
    throw ParameterError("unknown --input-kind '" + kind +
                         "' (expected measure, values or prices)");
}

int cmd_generate(const std::string& kind, double px, double py, unsigned levels,
                 double hx, double hy, double rho, std::size_t length,
                 std::uint64_t seed, const std::string& out_x, const std::string& out_y)
{
    if (kind == "binomial") {
        BinomialSpec sx{px, levels}, sy{py, levels};
        sx.validate();
        sy.validate();
        write_value_csv(out_x, gen_binomial(sx).values);
        write_value_csv(out_y, gen_binomial(sy).values);
        std::printf("binomial p_x=%g p_y=%g levels=%u -> %s, %s\n", px, py, levels,
                    out_x.c_str(), out_y.c_str());
        return 0;
    }
    if (kind == "bfbm") {
        BfbmSpec spec;
        spec.h_x = hx;
        spec.h_y = hy;
        spec.rho = rho;
        spec.length = length;
        spec.seed = seed;
        spec.validate();
        const auto [x, y] = gen_bfbm(spec);
        write_value_csv(out_x, x);
        write_value_csv(out_y, y);
        std::printf("bfbm h_x=%g h_y=%g rho=%g length=%zu seed=%llu -> %s, %s\n", hx, hy,
                    rho, length, static_cast<unsigned long long>(seed), out_x.c_str(),
                    out_y.c_str());
        return 0;
    }
    throw ParameterError("unknown generator kind '" + kind +
                         "' (expected binomial or bfbm)");
}

int cmd_analyze(const CommonOpts& opts, const std::string& in_x, const std::string& in_y,
                const std::string& input_kind)
{
    Measure mx = load_measure(in_x, input_kind);
    Measure my = load_measure(in_y, input_kind);
    if (input_kind == "prices" && mx.length() != my.length())
        throw DataError("price inputs differ in length after volatility; align them "
                        "with matching calendars or use the windows command");
    if (mx.length() != my.length())
        throw DataError("inputs differ in length");

    const AnalysisResult result = analyze_pair(mx, my, opts.to_config());
    auto prov = opts.provenance();
    prov["input_x"] = in_x;
    prov["input_y"] = in_y;
    prov["input_kind"] = input_kind;
    write_report_bundle(opts.out_dir, result, prov);
    std::printf("tau(0,0)=%.6f max_f=%.6f at (%g,%g) max|dtau|=%.6f -> %s\n",
                result.summary.tau00, result.summary.max_f, result.summary.max_f_p,
                result.summary.max_f_q, result.summary.max_abs_dtau,
                opts.out_dir.c_str());
    return 0;
}

int cmd_windows(const CommonOpts& opts, const std::string& in_x, const std::string& in_y,
                unsigned length_years, unsigned step_years)
{
    const auto [a, b] = align_by_dates(read_price_csv(in_x), read_price_csv(in_y));
    const std::vector<double> vol_x = volatility_from_prices(a);
    const std::vector<double> vol_y = volatility_from_prices(b);
    // volatility drops the first sample; windows index the volatility rows
    const std::vector<std::chrono::year_month_day> dates(a.dates.begin() + 1,
                                                         a.dates.end());

    WindowSpec spec;
    spec.by_years = true;
    spec.length = length_years;
    spec.step = step_years;
    const std::vector<WindowSlice> windows = make_windows(dates, spec);

    const std::filesystem::path root = opts.out_dir;
    std::filesystem::create_directories(root);
    std::ofstream summary(root / "windows.csv");
    summary << "window,start,samples,tau00,max_f,alpha_x_width,alpha_y_width\n";

    for (std::size_t w = 0; w < windows.size(); ++w) {
        const WindowSlice& slice = windows[w];
        const Measure mx = series_to_measure(
            {vol_x.begin() + slice.begin, vol_x.begin() + slice.end});
        const Measure my = series_to_measure(
            {vol_y.begin() + slice.begin, vol_y.begin() + slice.end});
        const AnalysisResult result = analyze_pair(mx, my, opts.to_config());

        auto prov = opts.provenance();
        prov["window_start"] = slice.label;
        prov["window_samples"] = std::to_string(slice.size());
        write_report_bundle(root / slice.label, result, prov);

        char buf[256];
        std::snprintf(buf, sizeof(buf), "%zu,%s,%zu,%.9g,%.9g,%.9g,%.9g\n", w,
                      slice.label.c_str(), slice.size(), result.summary.tau00,
                      result.summary.max_f,
                      result.summary.alpha_x_max - result.summary.alpha_x_min,
                      result.summary.alpha_y_max - result.summary.alpha_y_min);
        summary << buf;
    }
    std::printf("%zu windows -> %s\n", windows.size(), root.string().c_str());
    return 0;
}

int cmd_oracle(const CommonOpts& opts, double px, double py)
{
    const BinomialOracleParams params = make_params(px, py);
    const MomentGrid grid = parse_grid(opts.grid_text);
    const ExponentSurfaces surfaces = oracle_surfaces(params, grid);

    const std::filesystem::path dir = opts.out_dir;
    std::filesystem::create_directories(dir);
    write_matrix_csv(dir / "tau.csv", grid, surfaces.tau);
    write_matrix_csv(dir / "alpha_x.csv", grid, surfaces.alpha_x);
    write_matrix_csv(dir / "alpha_y.csv", grid, surfaces.alpha_y);
    write_matrix_csv(dir / "f.csv", grid, surfaces.f);
    write_spectrum_csv(dir / "spectrum.csv", to_spectrum(surfaces));

    const RelationReport report = relation_suite(params, grid);
    for (const RelationCheck& check : report.checks)
        std::printf("%-40s %s  max err %.3e\n", check.name.c_str(),
                    check.pass ? "pass" : "FAIL", check.max_err);
    std::printf("beta=%.12g gamma=%.12g alpha_y in (%.12g, %.12g) -> %s\n", params.beta,
                params.gamma, alpha_y_min(params), alpha_y_max(params),
                dir.string().c_str());
    return 0;
}

ExponentSurfaces read_bundle_surfaces(const std::filesystem::path& dir)
{
    ExponentSurfaces s;
    auto [grid, tau] = read_matrix_csv(dir / "tau.csv");
    s.grid = std::move(grid);
    s.tau = std::move(tau);
    s.alpha_x = read_matrix_csv(dir / "alpha_x.csv").second;
    s.alpha_y = read_matrix_csv(dir / "alpha_y.csv").second;
    s.f = read_matrix_csv(dir / "f.csv").second;
    if (s.alpha_x.size() != s.tau.size() || s.alpha_y.size() != s.tau.size() ||
        s.f.size() != s.tau.size())
        throw DataError(dir.string() + ": surface files disagree in shape");
    return s;
}

int cmd_compare(const std::string& est_dir, double px, double py, bool plane,
                double tol_tau, double tol_alpha, double tol_f)
{
    const ExponentSurfaces est = read_bundle_surfaces(est_dir);

    SurfaceDiff diff;
    if (plane) {
        // monofractal reference tau = p/2 + q/2 - 1, alpha_x = alpha_y = 1, f = 1
        ExponentSurfaces ref;
        ref.grid = est.grid;
        ref.tau.resize(ref.grid.cells());
        ref.alpha_x.assign(ref.grid.cells(), 1.0);
        ref.alpha_y.assign(ref.grid.cells(), 1.0);
        ref.f.assign(ref.grid.cells(), 1.0);
        for (std::size_t pi = 0; pi < ref.grid.np(); ++pi)
            for (std::size_t qi = 0; qi < ref.grid.nq(); ++qi)
                ref.tau[ref.grid.index(pi, qi)] =
                    0.5 * ref.grid.p_values[pi] + 0.5 * ref.grid.q_values[qi] - 1.0;
        diff = compare_surfaces(est, ref);
    } else {
        diff = compare_surfaces(est, oracle_surfaces(make_params(px, py), est.grid));
    }

    std::printf("max|dtau|=%.9g max|dalpha_x|=%.9g max|dalpha_y|=%.9g max|df|=%.9g\n",
                diff.max_tau, diff.max_alpha_x, diff.max_alpha_y, diff.max_f);
    if (diff.max_tau > tol_tau)
        throw ToleranceError("tau difference " + std::to_string(diff.max_tau) +
                             " exceeds tolerance " + std::to_string(tol_tau));
    if (std::max(diff.max_alpha_x, diff.max_alpha_y) > tol_alpha)
        throw ToleranceError("alpha difference exceeds tolerance " +
                             std::to_string(tol_alpha));
    if (diff.max_f > tol_f)
        throw ToleranceError("f difference " + std::to_string(diff.max_f) +
                             " exceeds tolerance " + std::to_string(tol_f));
    std::printf("within tolerances\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"joint multifractal cross-correlation analysis toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "INI config file; flags override its values");

    // generate
    auto* generate = app.add_subcommand("generate", "generate a synthetic measure/path pair");
    std::string gen_kind;
    double px = 0.3, py = 0.4, hx = 0.5, hy = 0.5, rho = 0.0;
    unsigned levels = 16;
    std::size_t length = 65536;
    std::uint64_t seed = 1;
    std::string out_x = "x.csv", out_y = "y.csv";
    generate->add_option("kind", gen_kind, "binomial | bfbm")->required();
    generate->add_option("--px", px, "left-branch multiplier of measure x")
        ->capture_default_str();
    generate->add_option("--py", py, "left-branch multiplier of measure y")
        ->capture_default_str();
    generate->add_option("--levels", levels, "cascade depth")->capture_default_str();
    generate->add_option("--hx", hx, "Hurst index of path x")->capture_default_str();
    generate->add_option("--hy", hy, "Hurst index of path y")->capture_default_str();
    generate->add_option("--rho", rho, "increment correlation")->capture_default_str();
    generate->add_option("--length", length, "path length")->capture_default_str();
    generate->add_option("--seed", seed, "random seed")->capture_default_str();
    generate->add_option("--out-x", out_x, "output CSV for x")->capture_default_str();
    generate->add_option("--out-y", out_y, "output CSV for y")->capture_default_str();

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full spectrum analysis of a pair");
    CommonOpts analyze_opts;
    std::string in_x, in_y, input_kind = "values";
    analyze->add_option("--input-x", in_x, "first input CSV")->required();
    analyze->add_option("--input-y", in_y, "second input CSV")->required();
    analyze->add_option("--input-kind", input_kind, "measure | values | prices")
        ->capture_default_str();
    analyze_opts.attach(*analyze);

    // windows
    auto* windows = app.add_subcommand("windows", "moving-window analysis of a price pair");
    CommonOpts window_opts;
    std::string win_x, win_y;
    unsigned window_years = 10, step_years = 1;
    windows->add_option("--input-x", win_x, "first date,close CSV")->required();
    windows->add_option("--input-y", win_y, "second date,close CSV")->required();
    windows->add_option("--window-years", window_years, "window length, calendar years")
        ->capture_default_str();
    windows->add_option("--step-years", step_years, "step, calendar years")
        ->capture_default_str();
    window_opts.attach(*windows);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "closed-form binomial surfaces");
    CommonOpts oracle_opts;
    double opx = 0.3, opy = 0.4;
    oracle->add_option("--px", opx, "multiplier of measure x")->capture_default_str();
    oracle->add_option("--py", opy, "multiplier of measure y")->capture_default_str();
    oracle_opts.attach(*oracle);

    // compare
    auto* compare = app.add_subcommand("compare", "diff estimated surfaces vs a reference");
    std::string est_dir;
    double cpx = 0.3, cpy = 0.4;
    bool plane = false;
    double tol_tau = 1e-6, tol_alpha = 0.01, tol_f = 0.01;
    compare->add_option("--est", est_dir, "directory with estimated surface CSVs")
        ->required();
    compare->add_option("--px", cpx, "reference multiplier of x")->capture_default_str();
    compare->add_option("--py", cpy, "reference multiplier of y")->capture_default_str();
    compare->add_flag("--plane", plane, "compare against the monofractal plane instead");
    compare->add_option("--tol-tau", tol_tau, "tau tolerance")->capture_default_str();
    compare->add_option("--tol-alpha", tol_alpha, "alpha tolerance")->capture_default_str();
    compare->add_option("--tol-f", tol_f, "f tolerance")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed())
            return cmd_generate(gen_kind, px, py, levels, hx, hy, rho, length, seed,
                                out_x, out_y);
        if (analyze->parsed())
            return cmd_analyze(analyze_opts, in_x, in_y, input_kind);
        if (windows->parsed())
            return cmd_windows(window_opts, win_x, win_y, window_years, step_years);
        if (oracle->parsed())
            return cmd_oracle(oracle_opts, opx, opy);
        if (compare->parsed())
            return cmd_compare(est_dir, cpx, cpy, plane, tol_tau, tol_alpha, tol_f);
    } catch (const mfxpf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
