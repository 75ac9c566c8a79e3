#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/partition.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mfxpf {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double std_error = 0.0;  // standard error of the slope
    std::size_t n_points = 0;
    bool ok = false;
};

/// Ordinary least squares of y against x. Needs >= 3 finite points.
FitResult linear_fit(std::span<const double> x, std::span<const double> y);

/// tau(p,q) surface with per-cell fit diagnostics. alpha and f grids are
/// filled later, either by the Legendre transform or by direct estimation;
/// undefined cells hold NaN.
struct ExponentSurfaces {
    MomentGrid grid;
    std::vector<double> tau;
    std::vector<double> alpha_x;
    std::vector<double> alpha_y;
    std::vector<double> f;
    std::vector<FitResult> diagnostics;

    double tau_at(std::size_t pi, std::size_t qi) const noexcept {
        return tau[grid.index(pi, qi)];
    }
};

/// tau(p,q) = least-squares slope of ln chi against ln s over the window.
ExponentSurfaces fit_tau(const PartitionTable& table, FitRange fit_range = {});

/// Direct (canonical-measure) determination of alpha_x, alpha_y and f as
/// log-log regression slopes of the mu-weighted sums.
struct DirectSurfaces {
    MomentGrid grid;
    std::vector<double> alpha_x;
    std::vector<double> alpha_y;
    std::vector<double> f;
    std::vector<FitResult> f_diagnostics;
};

DirectSurfaces direct_estimates(const MomentSums& sums, FitRange fit_range = {});
DirectSurfaces direct_estimates(const BoxSums& boxes, const MomentGrid& grid,
                                FitRange fit_range = {});

/// Uni-order results on the diagonal p = q.
struct UniSurfaces {
    std::vector<double> q_values;
    std::vector<double> tau;
    std::vector<FitResult> diagnostics;
};

UniSurfaces fit_tau_uni(const UniMomentSums& sums, FitRange fit_range = {});

/// Traditional single-measure mass exponents tau(q), the m_x = m_y, p = q
/// diagonal of the joint method.
UniSurfaces tau_individual(const Measure& m, const std::vector<double>& q_values,
                           const ScaleSet& scales, FitRange fit_range = {});

/// Direct uni-order estimates: alpha_xy from the paired measure
/// [m_x m_y]^(1/2), f from the canonical-measure entropy sum.
struct UniDirect {
    std::vector<double> q_values;
    std::vector<double> alpha_xy;
    std::vector<double> f;
};

UniDirect direct_uni(const UniMomentSums& sums, FitRange fit_range = {});

} // namespace mfxpf
