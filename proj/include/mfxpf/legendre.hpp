#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/regression.hpp"

#include <cstddef>
#include <vector>

namespace mfxpf {

/// Long-form joint spectrum record.
struct SpectrumPoint {
    double p, q, alpha_x, alpha_y, f;
};

struct JointSpectrum {
    MomentGrid grid;
    std::vector<SpectrumPoint> points;
};

/// Double Legendre transform of tau(p,q): alpha_x = 2 dtau/dp,
/// alpha_y = 2 dtau/dq by second-order central differences (second-order
/// one-sided stencils at the grid edges), f = p alpha_x/2 + q alpha_y/2 - tau.
/// Undefined tau cells propagate as NaN.
ExponentSurfaces double_legendre(const ExponentSurfaces& surfaces);

JointSpectrum to_spectrum(const ExponentSurfaces& surfaces);

/// Uni-order Legendre transform: alpha = dtau/dq, f = q alpha - tau.
struct UniLegendre {
    std::vector<double> q_values;
    std::vector<double> alpha_xy;
    std::vector<double> f;
};

UniLegendre uni_legendre(const std::vector<double>& tau_q,
                         const std::vector<double>& q_values);

/// Deviation from the monofractal plane: dtau = tau(p,q) - (p/2 + q/2 - 1).
struct MonofractalDeviation {
    MomentGrid grid;
    std::vector<double> dtau;
    double max_abs = 0.0;
};

MonofractalDeviation monofractal_deviation(const ExponentSurfaces& surfaces);

} // namespace mfxpf
