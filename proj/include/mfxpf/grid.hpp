#pragma once

#include <cstddef>
#include <vector>

namespace mfxpf {

/// Rectangular grid of moment orders (p, q), uniformly spaced, symmetric
/// about zero and containing zero on both axes.
struct MomentGrid {
    std::vector<double> p_values;
    std::vector<double> q_values;
    double spacing = 0.0;

    std::size_t np() const noexcept { return p_values.size(); }
    std::size_t nq() const noexcept { return q_values.size(); }
    std::size_t cells() const noexcept { return np() * nq(); }
    std::size_t index(std::size_t pi, std::size_t qi) const noexcept { return pi * nq() + qi; }

    /// Index of the zero entry on each axis (grids always contain 0).
    std::size_t p_zero_index() const noexcept { return (np() - 1) / 2; }
    std::size_t q_zero_index() const noexcept { return (nq() - 1) / 2; }

    /// Symmetric grid p, q in [-max_order, max_order] with the given spacing.
    /// max_order must be a positive integer multiple of the spacing.
    static MomentGrid symmetric(double max_order, double spacing);

    /// Default grid: orders in [-10, 10] with spacing 0.1.
    static MomentGrid standard() { return symmetric(10.0, 0.1); }

    void validate() const;
};

/// Strictly increasing box sizes, in cells.
struct ScaleSet {
    std::vector<std::size_t> scales;

    std::size_t size() const noexcept { return scales.size(); }

    /// Dyadic scales 2^2 .. 2^floor(log2(length/4)).
    static ScaleSet dyadic(std::size_t length);

    void validate(std::size_t length) const;
};

/// Inclusive scale window selecting the scales used by a regression.
struct FitRange {
    std::size_t s_min = 0;
    std::size_t s_max = 0;

    bool empty() const noexcept { return s_min == 0 && s_max == 0; }
    bool contains(std::size_t s) const noexcept {
        return empty() || (s >= s_min && s <= s_max);
    }
};

} // namespace mfxpf
