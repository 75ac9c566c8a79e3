#include "mfxpf/bfbm.hpp"

#include "mfxpf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace mfxpf {

namespace {

// Iterative radix-2 Cooley-Tukey, in place. n must be a power of two.
void fft_pow2(std::vector<std::complex<double>>& a)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

// Autocovariance of fractional Gaussian noise with Hurst index H at lag h.
double fgn_acov(double hurst, double lag)
{
    const double two_h = 2.0 * hurst;
    return 0.5 * (std::pow(std::abs(lag + 1.0), two_h) - 2.0 * std::pow(std::abs(lag), two_h) +
                  std::pow(std::abs(lag - 1.0), two_h));
}

} // namespace

void BfbmSpec::validate() const
{
    if (!(h_x > 0.0 && h_x < 1.0))
        throw ParameterError("h_x must be in (0, 1)");
    if (!(h_y > 0.0 && h_y < 1.0))
        throw ParameterError("h_y must be in (0, 1)");
    if (!(rho >= -1.0 && rho <= 1.0))
        throw ParameterError("rho must be in [-1, 1]");
    if (length < 4 || length > (std::size_t{1} << 24))
        throw ParameterError("bfbm length must be in [4, 2^24]");
}

std::pair<std::vector<double>, std::vector<double>> gen_bfbm(const BfbmSpec& spec)
{
    spec.validate();
    const std::size_t n = spec.length;
    std::size_t m = 1;
    while (m < 2 * n)
        m <<= 1;

    // Covariance sequences wrapped onto the circulant of size m. The cross
    // covariance uses the symmetric part only, with combined exponent
    // h_x + h_y, so the lag-zero increment correlation equals rho.
    std::vector<std::complex<double>> cxx(m), cyy(m), cxy(m);
    const double h_sum = spec.h_x + spec.h_y;
    for (std::size_t k = 0; k < m; ++k) {
        const double lag = static_cast<double>(std::min(k, m - k));
        cxx[k] = fgn_acov(spec.h_x, lag);
        cyy[k] = fgn_acov(spec.h_y, lag);
        cxy[k] = spec.rho * fgn_acov(0.5 * h_sum, lag);
    }
    fft_pow2(cxx);
    fft_pow2(cyy);
    fft_pow2(cxy);

    // Per-frequency 2x2 spectral matrices must be PSD for the embedding
    // (and the model) to be well posed.
    double max_trace = 0.0;
    for (std::size_t k = 0; k < m; ++k)
        max_trace = std::max(max_trace, cxx[k].real() + cyy[k].real());
    const double psd_tol = 1e-8 * std::max(max_trace, 1.0);

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::complex<double>> w1(m), w2(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = cxx[k].real();
        const double b = cyy[k].real();
        const double c = cxy[k].real();
        const double eig_min =
            0.5 * (a + b - std::sqrt((a - b) * (a - b) + 4.0 * c * c));
        if (eig_min < -psd_tol)
            throw ModelError("bfbm covariance not positive semidefinite "
                             "(h_x, h_y, rho are incompatible)");
        const double l11 = std::sqrt(std::max(a, 0.0));
        const double l21 = l11 > 0.0 ? c / l11 : 0.0;
        const double l22 = std::sqrt(std::max(b - l21 * l21, 0.0));
        const std::complex<double> e1(gauss(rng), gauss(rng));
        const std::complex<double> e2(gauss(rng), gauss(rng));
        w1[k] = l11 * e1;
        w2[k] = l21 * e1 + l22 * e2;
    }
    fft_pow2(w1);
    fft_pow2(w2);

    const double norm = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<double> path_x(n), path_y(n);
    double sum_x = 0.0, sum_y = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sum_x += w1[t].real() * norm;
        sum_y += w2[t].real() * norm;
        path_x[t] = sum_x;
        path_y[t] = sum_y;
    }
    return {std::move(path_x), std::move(path_y)};
}

} // namespace mfxpf
