#pragma once

#include "mfxpf/grid.hpp"
#include "mfxpf/measure.hpp"

#include <cstddef>
#include <vector>

namespace mfxpf {

/// Box-integrated masses of a measure pair at each scale, aligned so box t
/// covers the same cell range [t*s, (t+1)*s) in both measures. The trailing
/// remainder of non-dyadic lengths is discarded.
struct BoxSums {
    std::vector<std::size_t> scales;
    std::vector<std::vector<double>> x;  // per scale
    std::vector<std::vector<double>> y;
    std::size_t source_length = 0;

    std::size_t scale_index(std::size_t scale) const;
};

BoxSums integrate_boxes(const Measure& mx, const Measure& my, const ScaleSet& scales);

/// Joint partition function values chi(p,q,s) = sum_t m_x^(p/2) m_y^(q/2),
/// stored as ln chi. Boxes where either mass is zero are excluded from the
/// sums and counted per scale.
struct PartitionTable {
    MomentGrid grid;
    std::vector<std::size_t> scales;
    std::vector<double> log_chi;              // [scale][p][q]
    std::vector<std::size_t> zero_box_count;  // per scale
    std::vector<std::size_t> retained_boxes;  // nonzero boxes per scale

    std::size_t cell(std::size_t si, std::size_t pi, std::size_t qi) const noexcept {
        return (si * grid.np() + pi) * grid.nq() + qi;
    }
    double log_chi_at(std::size_t si, std::size_t pi, std::size_t qi) const noexcept {
        return log_chi[cell(si, pi, qi)];
    }
    double chi_at(std::size_t si, std::size_t pi, std::size_t qi) const noexcept;
};

/// Partition table plus the canonical-measure weighted log-mass sums
/// sum_t mu ln m_x and sum_t mu ln m_y, needed for direct spectrum
/// determination. One sweep produces everything.
struct MomentSums {
    PartitionTable table;
    std::vector<double> mu_log_mx;  // [scale][p][q]
    std::vector<double> mu_log_my;
};

/// Fraction of zero boxes tolerated per scale before the analysis aborts.
inline constexpr double kMaxZeroBoxFraction = 0.01;

MomentSums moment_sums(const BoxSums& boxes, const MomentGrid& grid,
                       double max_zero_fraction = kMaxZeroBoxFraction);

PartitionTable joint_partition(const BoxSums& boxes, const MomentGrid& grid,
                               double max_zero_fraction = kMaxZeroBoxFraction);

/// Uni-order specialization: chi(q,s) = sum_t [m_x m_y]^(q/2). Cells are
/// bit-identical to the joint table restricted to p = q.
struct UniMomentSums {
    std::vector<double> q_values;
    std::vector<std::size_t> scales;
    std::vector<double> log_chi;    // [scale][q]
    std::vector<double> mu_log_mx;  // [scale][q]
    std::vector<double> mu_log_my;
    std::vector<std::size_t> zero_box_count;
    std::vector<std::size_t> retained_boxes;

    std::size_t cell(std::size_t si, std::size_t qi) const noexcept {
        return si * q_values.size() + qi;
    }
};

UniMomentSums uni_moment_sums(const BoxSums& boxes, const std::vector<double>& q_values,
                              double max_zero_fraction = kMaxZeroBoxFraction);

/// Canonical measures mu_t = m_x^(p/2) m_y^(q/2) / chi at one (p, q, scale).
/// Zero-mass boxes get weight 0; the returned weights sum to 1.
std::vector<double> canonical_measures(const BoxSums& boxes, double p, double q,
                                       std::size_t scale);

} // namespace mfxpf
