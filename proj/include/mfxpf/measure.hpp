#pragma once

#include <chrono>
#include <cstddef>
#include <vector>

namespace mfxpf {

/// Nonnegative mass density over an ordered support, normalized to total
/// mass 1 at the finest cell resolution.
struct Measure {
    std::vector<double> values;

    std::size_t length() const noexcept { return values.size(); }

    /// Validating constructor: length >= 4, all values >= 0, sum within
    /// 1e-12 relative tolerance of 1.
    static Measure from_values(std::vector<double> values);

    void validate() const;
};

/// Daily closing prices with strictly increasing calendar dates.
struct PriceSeries {
    std::vector<std::chrono::year_month_day> dates;
    std::vector<double> closes;

    std::size_t size() const noexcept { return closes.size(); }

    void validate() const;
};

/// Daily volatility R(t) = |ln P(t) - ln P(t-1)|, length = input - 1.
std::vector<double> volatility_from_prices(const PriceSeries& prices);

/// Normalize a series into a Measure: |x_i| / sum_j |x_j|.
/// Requires >= 4 entries and at least one nonzero entry.
Measure series_to_measure(const std::vector<double>& series);

} // namespace mfxpf
