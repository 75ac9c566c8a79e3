#include "mfxpf/measure.hpp"

#include "mfxpf/errors.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace mfxpf {

Measure Measure::from_values(std::vector<double> values)
{
    Measure m{std::move(values)};
    m.validate();
    return m;
}

void Measure::validate() const
{
    if (values.size() < 4)
        throw ParameterError("measure must have at least 4 cells");
    double total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0.0))
            throw DataError("measure cell " + std::to_string(i) + " is negative or NaN");
        total += values[i];
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw DataError("measure mass " + std::to_string(total) + " is not 1");
}

void PriceSeries::validate() const
{
    if (dates.size() != closes.size())
        throw ParameterError("price series dates and closes differ in length");
    for (std::size_t i = 0; i < closes.size(); ++i) {
        if (!(closes[i] > 0.0))
            throw DataError("nonpositive close at row " + std::to_string(i + 1));
        if (i > 0 && !(std::chrono::sys_days(dates[i - 1]) < std::chrono::sys_days(dates[i])))
            throw DataError("timestamps not strictly increasing at row " + std::to_string(i + 1));
    }
}

std::vector<double> volatility_from_prices(const PriceSeries& prices)
{
    prices.validate();
    if (prices.size() < 2)
        throw ParameterError("need at least 2 price points");
    std::vector<double> vol;
    vol.reserve(prices.size() - 1);
    for (std::size_t t = 1; t < prices.size(); ++t)
        vol.push_back(std::abs(std::log(prices.closes[t]) - std::log(prices.closes[t - 1])));
    return vol;
}

Measure series_to_measure(const std::vector<double>& series)
{
    if (series.size() < 4)
        throw ParameterError("series must have at least 4 entries");
    double total = 0.0;
    for (double v : series)
        total += std::abs(v);
    if (total == 0.0)
        throw DataError("series is identically zero");
    Measure m;
    m.values.reserve(series.size());
    for (double v : series)
        m.values.push_back(std::abs(v) / total);
    return m;
}

} // namespace mfxpf
