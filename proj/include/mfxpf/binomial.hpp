#pragma once

#include "mfxpf/measure.hpp"

namespace mfxpf {

/// Deterministic p-model cascade: at every dyadic refinement the left half
/// of each interval receives mass fraction p and the right half 1 - p.
struct BinomialSpec {
    double p = 0.5;    // left-branch multiplier, in (0, 1)
    unsigned levels = 1;  // cascade depth L; output length 2^L, L in [1, 24]

    void validate() const;
};

/// Generate the cascade at depth L. The cell whose binary path contains k
/// left branches has value p^k (1-p)^(L-k); total mass is exactly 1.
Measure gen_binomial(const BinomialSpec& spec);

} // namespace mfxpf
