#include "mfxpf/regression.hpp"

#include "mfxpf/errors.hpp"

#include <cmath>
#include <limits>

namespace mfxpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Scale indices falling inside the fit window; requires >= 3.
std::vector<std::size_t> window_indices(const std::vector<std::size_t>& scales,
                                        FitRange range)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < scales.size(); ++i)
        if (range.contains(scales[i]))
            idx.push_back(i);
    if (idx.size() < 3)
        throw FitError("fewer than 3 scales inside the fit window");
    return idx;
}

// Regression of values[cell(si)] against ln s; NaN/inf values make the
// cell undefined rather than aborting the surface.
template <typename CellValue>
FitResult fit_cell(const std::vector<std::size_t>& scales,
                   const std::vector<std::size_t>& idx, CellValue value)
{
    std::vector<double> xs, ys;
    xs.reserve(idx.size());
    ys.reserve(idx.size());
    for (std::size_t si : idx) {
        const double y = value(si);
        if (std::isfinite(y)) {
            xs.push_back(std::log(static_cast<double>(scales[si])));
            ys.push_back(y);
        }
    }
    return linear_fit(xs, ys);
}

} // namespace

FitResult linear_fit(std::span<const double> x, std::span<const double> y)
{
    FitResult fit;
    if (x.size() != y.size() || x.size() < 3)
        return fit;
    const auto n = static_cast<double>(x.size());
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= n;
    mean_y /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0))
        return fit;

    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;
    const double ss_res = std::max(syy - sxy * sxy / sxx, 0.0);
    // a flat line leaves syy at rounding-noise level; report a perfect fit
    // instead of the noise ratio
    const double y_scale = std::max(1.0, mean_y * mean_y);
    fit.r_squared = syy > 1e-20 * y_scale ? 1.0 - ss_res / syy : 1.0;
    fit.std_error = x.size() > 2
                        ? std::sqrt(ss_res / (n - 2.0) / sxx)
                        : 0.0;
    fit.n_points = x.size();
    fit.ok = std::isfinite(fit.slope);
    return fit;
}

ExponentSurfaces fit_tau(const PartitionTable& table, FitRange fit_range)
{
    const auto idx = window_indices(table.scales, fit_range);

    ExponentSurfaces out;
    out.grid = table.grid;
    out.tau.assign(out.grid.cells(), kNaN);
    out.alpha_x.assign(out.grid.cells(), kNaN);
    out.alpha_y.assign(out.grid.cells(), kNaN);
    out.f.assign(out.grid.cells(), kNaN);
    out.diagnostics.resize(out.grid.cells());

    for (std::size_t pi = 0; pi < out.grid.np(); ++pi) {
        for (std::size_t qi = 0; qi < out.grid.nq(); ++qi) {
            const FitResult fit = fit_cell(table.scales, idx, [&](std::size_t si) {
                return table.log_chi_at(si, pi, qi);
            });
            const std::size_t c = out.grid.index(pi, qi);
            out.diagnostics[c] = fit;
            if (fit.ok)
                out.tau[c] = fit.slope;
        }
    }
    return out;
}

DirectSurfaces direct_estimates(const MomentSums& sums, FitRange fit_range)
{
    const PartitionTable& table = sums.table;
    const auto idx = window_indices(table.scales, fit_range);

    DirectSurfaces out;
    out.grid = table.grid;
    out.alpha_x.assign(out.grid.cells(), kNaN);
    out.alpha_y.assign(out.grid.cells(), kNaN);
    out.f.assign(out.grid.cells(), kNaN);
    out.f_diagnostics.resize(out.grid.cells());

    for (std::size_t pi = 0; pi < out.grid.np(); ++pi) {
        const double p = out.grid.p_values[pi];
        for (std::size_t qi = 0; qi < out.grid.nq(); ++qi) {
            const double q = out.grid.q_values[qi];
            const std::size_t c = out.grid.index(pi, qi);
            const auto cell = [&](std::size_t si) { return table.cell(si, pi, qi); };

            const FitResult fx = fit_cell(table.scales, idx, [&](std::size_t si) {
                return sums.mu_log_mx[cell(si)];
            });
            const FitResult fy = fit_cell(table.scales, idx, [&](std::size_t si) {
                return sums.mu_log_my[cell(si)];
            });
            // sum_t mu ln mu = (p/2) sum mu ln m_x + (q/2) sum mu ln m_y - ln chi
            const FitResult ff = fit_cell(table.scales, idx, [&](std::size_t si) {
                return 0.5 * p * sums.mu_log_mx[cell(si)] +
                       0.5 * q * sums.mu_log_my[cell(si)] - table.log_chi[cell(si)];
            });
            out.f_diagnostics[c] = ff;
            if (fx.ok)
                out.alpha_x[c] = fx.slope;
            if (fy.ok)
                out.alpha_y[c] = fy.slope;
            if (ff.ok)
                out.f[c] = ff.slope;
        }
    }
    return out;
}

DirectSurfaces direct_estimates(const BoxSums& boxes, const MomentGrid& grid,
                                FitRange fit_range)
{
    return direct_estimates(moment_sums(boxes, grid), fit_range);
}

UniSurfaces fit_tau_uni(const UniMomentSums& sums, FitRange fit_range)
{
    const auto idx = window_indices(sums.scales, fit_range);

    UniSurfaces out;
    out.q_values = sums.q_values;
    out.tau.assign(sums.q_values.size(), kNaN);
    out.diagnostics.resize(sums.q_values.size());
    for (std::size_t qi = 0; qi < sums.q_values.size(); ++qi) {
        const FitResult fit = fit_cell(sums.scales, idx, [&](std::size_t si) {
            return sums.log_chi[sums.cell(si, qi)];
        });
        out.diagnostics[qi] = fit;
        if (fit.ok)
            out.tau[qi] = fit.slope;
    }
    return out;
}

UniSurfaces tau_individual(const Measure& m, const std::vector<double>& q_values,
                           const ScaleSet& scales, FitRange fit_range)
{
    const BoxSums boxes = integrate_boxes(m, m, scales);
    return fit_tau_uni(uni_moment_sums(boxes, q_values), fit_range);
}

UniDirect direct_uni(const UniMomentSums& sums, FitRange fit_range)
{
    const auto idx = window_indices(sums.scales, fit_range);

    UniDirect out;
    out.q_values = sums.q_values;
    out.alpha_xy.assign(sums.q_values.size(), kNaN);
    out.f.assign(sums.q_values.size(), kNaN);
    for (std::size_t qi = 0; qi < sums.q_values.size(); ++qi) {
        const double q = sums.q_values[qi];
        const FitResult fa = fit_cell(sums.scales, idx, [&](std::size_t si) {
            const std::size_t c = sums.cell(si, qi);
            return 0.5 * (sums.mu_log_mx[c] + sums.mu_log_my[c]);
        });
        const FitResult ff = fit_cell(sums.scales, idx, [&](std::size_t si) {
            const std::size_t c = sums.cell(si, qi);
            return 0.5 * q * (sums.mu_log_mx[c] + sums.mu_log_my[c]) - sums.log_chi[c];
        });
        if (fa.ok)
            out.alpha_xy[qi] = fa.slope;
        if (ff.ok)
            out.f[qi] = ff.slope;
    }
    return out;
}

} // namespace mfxpf
