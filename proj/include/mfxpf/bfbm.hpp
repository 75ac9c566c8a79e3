#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace mfxpf {

/// Bivariate fractional Brownian motion with marginal Hurst indices h_x,
/// h_y and instantaneous increment correlation rho (well-balanced case:
/// the antisymmetric part of the cross covariance is zero).
struct BfbmSpec {
    double h_x = 0.5;
    double h_y = 0.5;
    double rho = 0.0;
    std::size_t length = 0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Exact simulation via circulant embedding of the bivariate fractional
/// Gaussian noise, followed by cumulative summation. Deterministic for a
/// fixed seed. Throws ModelError when the implied joint covariance is not
/// positive semidefinite.
std::pair<std::vector<double>, std::vector<double>> gen_bfbm(const BfbmSpec& spec);

} // namespace mfxpf
