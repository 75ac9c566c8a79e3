#include "mfxpf/legendre.hpp"

#include "mfxpf/errors.hpp"

#include <cmath>
#include <limits>

namespace mfxpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Second-order derivative along a uniformly spaced line of values:
// central in the interior, one-sided three-point stencils at the ends.
// Any NaN inside a stencil makes the result NaN.
double deriv_at(const std::vector<double>& v, std::size_t i, double h)
{
    const std::size_t n = v.size();
    if (i == 0)
        return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    if (i == n - 1)
        return (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return (v[i + 1] - v[i - 1]) / (2.0 * h);
}

} // namespace

ExponentSurfaces double_legendre(const ExponentSurfaces& surfaces)
{
    const MomentGrid& grid = surfaces.grid;
    if (grid.np() < 3 || grid.nq() < 3)
        throw ParameterError("moment grid must have at least 3 points per axis");

    ExponentSurfaces out = surfaces;
    std::vector<double> line;

    // alpha_x = 2 dtau/dp along columns
    line.resize(grid.np());
    for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
        for (std::size_t pi = 0; pi < grid.np(); ++pi)
            line[pi] = surfaces.tau_at(pi, qi);
        for (std::size_t pi = 0; pi < grid.np(); ++pi)
            out.alpha_x[grid.index(pi, qi)] = 2.0 * deriv_at(line, pi, grid.spacing);
    }

    // alpha_y = 2 dtau/dq along rows
    line.resize(grid.nq());
    for (std::size_t pi = 0; pi < grid.np(); ++pi) {
        for (std::size_t qi = 0; qi < grid.nq(); ++qi)
            line[qi] = surfaces.tau_at(pi, qi);
        for (std::size_t qi = 0; qi < grid.nq(); ++qi)
            out.alpha_y[grid.index(pi, qi)] = 2.0 * deriv_at(line, qi, grid.spacing);
    }

    for (std::size_t pi = 0; pi < grid.np(); ++pi) {
        for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
            const std::size_t c = grid.index(pi, qi);
            out.f[c] = 0.5 * grid.p_values[pi] * out.alpha_x[c] +
                       0.5 * grid.q_values[qi] * out.alpha_y[c] - surfaces.tau[c];
        }
    }
    return out;
}

JointSpectrum to_spectrum(const ExponentSurfaces& surfaces)
{
    JointSpectrum spectrum;
    spectrum.grid = surfaces.grid;
    spectrum.points.reserve(surfaces.grid.cells());
    for (std::size_t pi = 0; pi < surfaces.grid.np(); ++pi)
        for (std::size_t qi = 0; qi < surfaces.grid.nq(); ++qi) {
            const std::size_t c = surfaces.grid.index(pi, qi);
            spectrum.points.push_back({surfaces.grid.p_values[pi],
                                       surfaces.grid.q_values[qi], surfaces.alpha_x[c],
                                       surfaces.alpha_y[c], surfaces.f[c]});
        }
    return spectrum;
}

UniLegendre uni_legendre(const std::vector<double>& tau_q,
                         const std::vector<double>& q_values)
{
    if (tau_q.size() != q_values.size())
        throw ParameterError("tau and q sequences differ in length");
    if (q_values.size() < 3)
        throw ParameterError("need at least 3 q points");
    double h = q_values[1] - q_values[0];
    for (std::size_t i = 0; i + 1 < q_values.size(); ++i)
        if (std::abs(q_values[i + 1] - q_values[i] - h) > 1e-9)
            throw ParameterError("q values must be uniformly spaced");

    UniLegendre out;
    out.q_values = q_values;
    out.alpha_xy.resize(q_values.size());
    out.f.resize(q_values.size());
    for (std::size_t i = 0; i < q_values.size(); ++i) {
        out.alpha_xy[i] = deriv_at(tau_q, i, h);
        out.f[i] = q_values[i] * out.alpha_xy[i] - tau_q[i];
    }
    return out;
}

MonofractalDeviation monofractal_deviation(const ExponentSurfaces& surfaces)
{
    MonofractalDeviation dev;
    dev.grid = surfaces.grid;
    dev.dtau.assign(dev.grid.cells(), kNaN);
    for (std::size_t pi = 0; pi < dev.grid.np(); ++pi)
        for (std::size_t qi = 0; qi < dev.grid.nq(); ++qi) {
            const std::size_t c = dev.grid.index(pi, qi);
            const double plane =
                0.5 * dev.grid.p_values[pi] + 0.5 * dev.grid.q_values[qi] - 1.0;
            dev.dtau[c] = surfaces.tau[c] - plane;
            if (std::isfinite(dev.dtau[c]))
                dev.max_abs = std::max(dev.max_abs, std::abs(dev.dtau[c]));
        }
    return dev;
}

} // namespace mfxpf
