#include "mfxpf/binomial.hpp"

#include "mfxpf/errors.hpp"

#include <cstddef>
#include <vector>

namespace mfxpf {

void BinomialSpec::validate() const
{
    if (!(p > 0.0 && p < 1.0))
        throw ParameterError("binomial multiplier must be in (0, 1)");
    if (levels < 1 || levels > 24)
        throw ParameterError("binomial levels must be in [1, 24]");
}

Measure gen_binomial(const BinomialSpec& spec)
{
    spec.validate();
    std::vector<double> cells{1.0};
    for (unsigned level = 0; level < spec.levels; ++level) {
        std::vector<double> next(cells.size() * 2);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            next[2 * i] = cells[i] * spec.p;
            next[2 * i + 1] = cells[i] * (1.0 - spec.p);
        }
        cells.swap(next);
    }
    Measure m;
    m.values = std::move(cells);
    return m;
}

} // namespace mfxpf
