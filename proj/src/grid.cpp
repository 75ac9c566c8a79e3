#include "mfxpf/grid.hpp"

#include "mfxpf/errors.hpp"

#include <cmath>
#include <string>

namespace mfxpf {

MomentGrid MomentGrid::symmetric(double max_order, double spacing)
{
    if (!(spacing > 0.0))
        throw ParameterError("moment grid spacing must be positive");
    if (!(max_order > 0.0))
        throw ParameterError("moment grid max order must be positive");
    const double steps_real = max_order / spacing;
    const auto steps = static_cast<long>(std::llround(steps_real));
    if (steps < 1 || std::abs(steps_real - static_cast<double>(steps)) > 1e-9)
        throw ParameterError("moment grid max order must be a multiple of the spacing");

    MomentGrid grid;
    grid.spacing = spacing;
    grid.p_values.reserve(static_cast<std::size_t>(2 * steps + 1));
    for (long i = -steps; i <= steps; ++i)
        grid.p_values.push_back(static_cast<double>(i) * spacing);
    // force an exact zero at the centre regardless of rounding
    grid.p_values[static_cast<std::size_t>(steps)] = 0.0;
    grid.q_values = grid.p_values;
    return grid;
}

void MomentGrid::validate() const
{
    if (!(spacing > 0.0))
        throw ParameterError("moment grid spacing must be positive");
    for (const auto* axis : {&p_values, &q_values}) {
        if (axis->size() < 3 || axis->size() % 2 == 0)
            throw ParameterError("moment grid axis must have odd size >= 3");
        const std::size_t mid = (axis->size() - 1) / 2;
        if ((*axis)[mid] != 0.0)
            throw ParameterError("moment grid axis must contain 0 at its centre");
        for (std::size_t i = 0; i + 1 < axis->size(); ++i) {
            const double step = (*axis)[i + 1] - (*axis)[i];
            if (std::abs(step - spacing) > 1e-9)
                throw ParameterError("moment grid axis must be uniformly spaced");
            if (std::abs((*axis)[i] + (*axis)[axis->size() - 1 - i]) > 1e-9)
                throw ParameterError("moment grid axis must be symmetric about 0");
        }
    }
}

ScaleSet ScaleSet::dyadic(std::size_t length)
{
    if (length < 16)
        throw ParameterError("series too short for dyadic scales (need >= 16 cells)");
    ScaleSet set;
    for (std::size_t s = 4; s <= length / 4; s *= 2)
        set.scales.push_back(s);
    return set;
}

void ScaleSet::validate(std::size_t length) const
{
    if (scales.empty())
        throw ParameterError("scale set is empty");
    std::size_t prev = 0;
    for (std::size_t s : scales) {
        if (s < 1)
            throw ParameterError("scales must be >= 1");
        if (s <= prev)
            throw ParameterError("scales must be strictly increasing");
        prev = s;
    }
    if (scales.back() > length / 2)
        throw ParameterError("largest scale " + std::to_string(scales.back()) +
                             " leaves fewer than 2 boxes for length " +
                             std::to_string(length));
}

} // namespace mfxpf
