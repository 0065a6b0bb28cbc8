#pragma once

// Discrete Hilbert transform (conjugate-function convention on T^1) via
// the spectral multiplier -i sign(k); exact on band-limited samples.

#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fft.hpp"
#include "rng.hpp"

namespace skewlyap {

struct PeriodicFunctionSample {
    std::vector<double> values; // f(i/M), i = 0..M-1, M a power of two
    double mean = 0;

    static PeriodicFunctionSample from_values(std::vector<double> v) {
        if (!is_power_of_two(v.size()))
            throw std::invalid_argument("PeriodicFunctionSample: grid must be a power of two");
        PeriodicFunctionSample s;
        s.mean = std::accumulate(v.begin(), v.end(), 0.0) / (double)v.size();
        s.values = std::move(v);
        return s;
    }

    PeriodicFunctionSample mean_subtracted() const {
        PeriodicFunctionSample s;
        s.values.reserve(values.size());
        for (double x : values) s.values.push_back(x - mean);
        s.mean = 0;
        return s;
    }

    double l1_norm() const {
        double s = 0;
        for (double x : values) s += std::fabs(x);
        return s / (double)values.size();
    }
    double l2_norm_sq() const {
        double s = 0;
        for (double x : values) s += x * x;
        return s / (double)values.size();
    }
    double linf_norm() const {
        double s = 0;
        for (double x : values) s = std::max(s, std::fabs(x));
        return s;
    }
};

inline PeriodicFunctionSample hilbert_transform(const PeriodicFunctionSample& in) {
    const std::size_t n = in.values.size();
    if (!is_power_of_two(n)) throw std::invalid_argument("hilbert_transform: grid size");
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = in.values[i];
    fft_inplace(a, false);
    const std::complex<double> minus_i(0, -1), plus_i(0, 1);
    a[0] = 0;         // multiplier kills frequency zero
    a[n / 2] = 0;     // Nyquist bin has no signed pair
    for (std::size_t k = 1; k < n / 2; ++k) {
        a[k] *= minus_i;
        a[n - k] *= plus_i;
    }
    fft_inplace(a, true);
    PeriodicFunctionSample out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i].real();
    out.mean = 0;
    return out;
}

// Spectral derivative (2 pi i k multiplier), used for band-limited f'.
inline PeriodicFunctionSample spectral_derivative(const PeriodicFunctionSample& in) {
    const std::size_t n = in.values.size();
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = in.values[i];
    fft_inplace(a, false);
    const double two_pi = 6.28318530717958647692528676655900577;
    a[0] = 0;
    a[n / 2] = 0;
    for (std::size_t k = 1; k < n / 2; ++k) {
        a[k] *= std::complex<double>(0, two_pi * (double)k);
        a[n - k] *= std::complex<double>(0, -two_pi * (double)k);
    }
    fft_inplace(a, true);
    PeriodicFunctionSample out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i].real();
    out.mean = 0;
    return out;
}

// Random real trigonometric polynomial of the given degree, coefficients
// uniform in [-1,1] from the counter stream.
inline PeriodicFunctionSample random_trig_poly(std::size_t grid, int degree, std::uint64_t seed,
                                               std::uint64_t stream) {
    std::vector<std::complex<double>> a(grid, 0.0);
    for (int k = 1; k <= degree; ++k) {
        double re = 2 * counter_uniform(seed, stream, 4 * (std::uint64_t)k) - 1;
        double im = 2 * counter_uniform(seed, stream, 4 * (std::uint64_t)k + 1) - 1;
        a[(std::size_t)k] = {re, im};
        a[grid - (std::size_t)k] = {re, -im}; // real signal
    }
    fft_inplace(a, true);
    std::vector<double> v(grid);
    for (std::size_t i = 0; i < grid; ++i) v[i] = a[i].real() * (double)grid / std::sqrt((double)degree);
    return PeriodicFunctionSample::from_values(std::move(v));
}

} // namespace skewlyap
