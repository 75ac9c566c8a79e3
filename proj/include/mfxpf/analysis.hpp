#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/legendre.hpp"
#include "mfxpf/measure.hpp"
#include "mfxpf/partition.hpp"
#include "mfxpf/regression.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mfxpf {

enum class Method { BiOrder, UniOrder, Direct, All };

std::string method_name(Method method);
Method method_from_name(const std::string& name);

struct AnalysisConfig {
    MomentGrid grid = MomentGrid::standard();
    std::optional<ScaleSet> scales;  // default: dyadic from the input length
    FitRange fit_range;              // empty: all scales
    Method method = Method::All;
    double max_zero_fraction = kMaxZeroBoxFraction;
};

struct AnalysisSummary {
    double tau00 = 0.0;
    double max_f = 0.0;
    double max_f_p = 0.0;
    double max_f_q = 0.0;
    double max_abs_dtau = 0.0;
    double alpha_x_min = 0.0, alpha_x_max = 0.0;
    double alpha_y_min = 0.0, alpha_y_max = 0.0;
    double min_r_squared = 0.0;  // over defined cells
    std::size_t undefined_cells = 0;
};

struct AnalysisResult {
    AnalysisConfig config;
    PartitionTable table;
    ExponentSurfaces surfaces;  // tau + Legendre-route alpha/f
    DirectSurfaces direct;      // empty unless method is Direct or All
    UniSurfaces uni_tau;
    UniLegendre uni;
    UniDirect uni_direct;
    MonofractalDeviation deviation;
    AnalysisSummary summary;
};

/// Full pipeline on an aligned measure pair.
AnalysisResult analyze_pair(const Measure& mx, const Measure& my,
                            const AnalysisConfig& config);

/// Report bundle: chi.csv/.json, tau.csv, alpha_x.csv, alpha_y.csv, f.csv,
/// spectrum.csv, uni.csv, summary.json inside `dir` (created if needed).
/// `provenance` key-values are echoed into summary.json.
void write_report_bundle(const std::filesystem::path& dir, const AnalysisResult& result,
                         const std::map<std::string, std::string>& provenance = {});

/// Moving-window layout. Calendar windows step on exact calendar years;
/// sample windows step on row counts.
struct WindowSpec {
    bool by_years = true;
    unsigned length = 10;
    unsigned step = 1;

    void validate() const;
};

struct WindowSlice {
    std::size_t begin = 0;  // [begin, end) rows of the aligned price series
    std::size_t end = 0;
    std::string label;      // start date (calendar) or start row (samples)

    std::size_t size() const noexcept { return end - begin; }
};

/// Minimum samples a window must contain.
inline constexpr std::size_t kMinWindowSamples = 256;

std::vector<WindowSlice> make_windows(const std::vector<std::chrono::year_month_day>& dates,
                                      const WindowSpec& spec);

/// Align two price series on their common timestamps.
std::pair<PriceSeries, PriceSeries> align_by_dates(const PriceSeries& a,
                                                   const PriceSeries& b);

/// Max-norm differences between two surfaces on identical grids; NaN cells
/// are skipped pairwise.
struct SurfaceDiff {
    double max_tau = 0.0;
    double max_alpha_x = 0.0;
    double max_alpha_y = 0.0;
    double max_f = 0.0;
};

SurfaceDiff compare_surfaces(const ExponentSurfaces& a, const ExponentSurfaces& b);

} // namespace mfxpf
