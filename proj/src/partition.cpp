#include "mfxpf/partition.hpp"

#include "mfxpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

namespace mfxpf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Distinct (ln m_x, ln m_y) pairs with multiplicities, zero boxes dropped.
// Deduplication collapses the n+1 distinct box types of a binomial cascade;
// for generic data it is a no-op apart from the sort.
struct ScaleGroups {
    std::vector<double> lx, ly, w;
    std::size_t zero_boxes = 0;
    std::size_t total_boxes = 0;
};

ScaleGroups build_groups(const std::vector<double>& bx, const std::vector<double>& by)
{
    ScaleGroups g;
    g.total_boxes = bx.size();
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(bx.size());
    for (std::size_t t = 0; t < bx.size(); ++t) {
        if (bx[t] > 0.0 && by[t] > 0.0)
            pairs.emplace_back(std::log(bx[t]), std::log(by[t]));
        else
            ++g.zero_boxes;
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < pairs.size();) {
        std::size_t j = i;
        while (j < pairs.size() && pairs[j] == pairs[i])
            ++j;
        g.lx.push_back(pairs[i].first);
        g.ly.push_back(pairs[i].second);
        g.w.push_back(static_cast<double>(j - i));
        i = j;
    }
    return g;
}

// out[g] = exp((order/2) * (l[g] - shift)) with shift chosen so every
// weight is <= 1, keeping arbitrary orders overflow-free.
double fill_weights(const std::vector<double>& l, double order, std::vector<double>& out)
{
    double shift = order >= 0.0 ? *std::max_element(l.begin(), l.end())
                                : *std::min_element(l.begin(), l.end());
    out.resize(l.size());
    const double half = 0.5 * order;
    for (std::size_t g = 0; g < l.size(); ++g)
        out[g] = std::exp(half * (l[g] - shift));
    return shift;
}

struct CellSums {
    double log_chi;
    double mu_log_mx;
    double mu_log_my;
};

CellSums cell_sums(const ScaleGroups& groups, const std::vector<double>& u, double sx,
                   double p, const std::vector<double>& v, double sy, double q)
{
    double s = 0.0, s_lx = 0.0, s_ly = 0.0;
    for (std::size_t g = 0; g < groups.w.size(); ++g) {
        const double term = groups.w[g] * u[g] * v[g];
        s += term;
        s_lx += term * groups.lx[g];
        s_ly += term * groups.ly[g];
    }
    if (!(s > 0.0))
        return {-std::numeric_limits<double>::infinity(), kNaN, kNaN};
    return {0.5 * p * sx + 0.5 * q * sy + std::log(s), s_lx / s, s_ly / s};
}

void check_zero_fraction(const ScaleGroups& g, std::size_t scale, double max_zero_fraction)
{
    if (g.w.empty())
        throw DataError("all boxes are zero at scale " + std::to_string(scale));
    const double frac =
        static_cast<double>(g.zero_boxes) / static_cast<double>(g.total_boxes);
    if (frac > max_zero_fraction)
        throw DataError("zero-box fraction " + std::to_string(frac) + " at scale " +
                        std::to_string(scale) + " exceeds " +
                        std::to_string(max_zero_fraction) +
                        "; negative moments would diverge");
}

} // namespace

std::size_t BoxSums::scale_index(std::size_t scale) const
{
    for (std::size_t i = 0; i < scales.size(); ++i)
        if (scales[i] == scale)
            return i;
    throw ParameterError("scale " + std::to_string(scale) + " not present in box sums");
}

BoxSums integrate_boxes(const Measure& mx, const Measure& my, const ScaleSet& scales)
{
    if (mx.length() != my.length())
        throw ParameterError("paired measures differ in length");
    scales.validate(mx.length());

    BoxSums boxes;
    boxes.source_length = mx.length();
    boxes.scales = scales.scales;
    for (std::size_t s : scales.scales) {
        const std::size_t n_boxes = mx.length() / s;
        std::vector<double> bx(n_boxes), by(n_boxes);
        for (std::size_t t = 0; t < n_boxes; ++t) {
            double sum_x = 0.0, sum_y = 0.0;
            for (std::size_t i = t * s; i < (t + 1) * s; ++i) {
                sum_x += mx.values[i];
                sum_y += my.values[i];
            }
            bx[t] = sum_x;
            by[t] = sum_y;
        }
        boxes.x.push_back(std::move(bx));
        boxes.y.push_back(std::move(by));
    }
    return boxes;
}

MomentSums moment_sums(const BoxSums& boxes, const MomentGrid& grid, double max_zero_fraction)
{
    grid.validate();
    if (boxes.scales.empty())
        throw ParameterError("box sums are empty");

    MomentSums out;
    out.table.grid = grid;
    out.table.scales = boxes.scales;
    const std::size_t cells = boxes.scales.size() * grid.cells();
    out.table.log_chi.assign(cells, kNaN);
    out.mu_log_mx.assign(cells, kNaN);
    out.mu_log_my.assign(cells, kNaN);

    std::vector<std::vector<double>> u(grid.np()), v(grid.nq());
    std::vector<double> sx(grid.np()), sy(grid.nq());

    for (std::size_t si = 0; si < boxes.scales.size(); ++si) {
        const ScaleGroups groups = build_groups(boxes.x[si], boxes.y[si]);
        check_zero_fraction(groups, boxes.scales[si], max_zero_fraction);
        out.table.zero_box_count.push_back(groups.zero_boxes);
        out.table.retained_boxes.push_back(groups.total_boxes - groups.zero_boxes);

        for (std::size_t pi = 0; pi < grid.np(); ++pi)
            sx[pi] = fill_weights(groups.lx, grid.p_values[pi], u[pi]);
        for (std::size_t qi = 0; qi < grid.nq(); ++qi)
            sy[qi] = fill_weights(groups.ly, grid.q_values[qi], v[qi]);

        for (std::size_t pi = 0; pi < grid.np(); ++pi) {
            for (std::size_t qi = 0; qi < grid.nq(); ++qi) {
                const CellSums c = cell_sums(groups, u[pi], sx[pi], grid.p_values[pi],
                                             v[qi], sy[qi], grid.q_values[qi]);
                const std::size_t idx = out.table.cell(si, pi, qi);
                out.table.log_chi[idx] = c.log_chi;
                out.mu_log_mx[idx] = c.mu_log_mx;
                out.mu_log_my[idx] = c.mu_log_my;
            }
        }
    }
    return out;
}

PartitionTable joint_partition(const BoxSums& boxes, const MomentGrid& grid,
                               double max_zero_fraction)
{
    return moment_sums(boxes, grid, max_zero_fraction).table;
}

UniMomentSums uni_moment_sums(const BoxSums& boxes, const std::vector<double>& q_values,
                              double max_zero_fraction)
{
    if (q_values.empty())
        throw ParameterError("empty q grid");
    if (boxes.scales.empty())
        throw ParameterError("box sums are empty");

    UniMomentSums out;
    out.q_values = q_values;
    out.scales = boxes.scales;
    const std::size_t cells = boxes.scales.size() * q_values.size();
    out.log_chi.assign(cells, kNaN);
    out.mu_log_mx.assign(cells, kNaN);
    out.mu_log_my.assign(cells, kNaN);

    std::vector<double> u, v;
    for (std::size_t si = 0; si < boxes.scales.size(); ++si) {
        const ScaleGroups groups = build_groups(boxes.x[si], boxes.y[si]);
        check_zero_fraction(groups, boxes.scales[si], max_zero_fraction);
        out.zero_box_count.push_back(groups.zero_boxes);
        out.retained_boxes.push_back(groups.total_boxes - groups.zero_boxes);

        for (std::size_t qi = 0; qi < q_values.size(); ++qi) {
            const double q = q_values[qi];
            const double sx = fill_weights(groups.lx, q, u);
            const double sy = fill_weights(groups.ly, q, v);
            const CellSums c = cell_sums(groups, u, sx, q, v, sy, q);
            const std::size_t idx = out.cell(si, qi);
            out.log_chi[idx] = c.log_chi;
            out.mu_log_mx[idx] = c.mu_log_mx;
            out.mu_log_my[idx] = c.mu_log_my;
        }
    }
    return out;
}

double PartitionTable::chi_at(std::size_t si, std::size_t pi, std::size_t qi) const noexcept
{
    return std::exp(log_chi_at(si, pi, qi));
}

std::vector<double> canonical_measures(const BoxSums& boxes, double p, double q,
                                       std::size_t scale)
{
    const std::size_t si = boxes.scale_index(scale);
    const std::vector<double>& bx = boxes.x[si];
    const std::vector<double>& by = boxes.y[si];

    std::vector<double> expo(bx.size(), -std::numeric_limits<double>::infinity());
    double max_expo = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < bx.size(); ++t) {
        if (bx[t] > 0.0 && by[t] > 0.0) {
            expo[t] = 0.5 * p * std::log(bx[t]) + 0.5 * q * std::log(by[t]);
            max_expo = std::max(max_expo, expo[t]);
        }
    }
    if (!std::isfinite(max_expo))
        throw DataError("all boxes are zero at scale " + std::to_string(scale));

    std::vector<double> mu(bx.size(), 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < bx.size(); ++t) {
        if (std::isfinite(expo[t])) {
            mu[t] = std::exp(expo[t] - max_expo);
            total += mu[t];
        }
    }
    for (double& m : mu)
        m /= total;
    return mu;
}

} // namespace mfxpf
