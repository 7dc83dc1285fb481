/*
 * (C) Copyright 2026 fracwave developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef FRACWAVE_FFT_HPP
#define FRACWAVE_FFT_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace fracwave::detail {

// Iterative radix-2 Cooley-Tukey. Grid sizes are powers of two by
// construction, so no general-length machinery is needed. Twiddle tables are
// cached per size and thread.
class Fft {
  public:
    static void forward(std::vector<std::complex<double>>& a) { transform(a, false); }
    static void inverse(std::vector<std::complex<double>>& a) {
        transform(a, true);
        const double inv = 1.0 / static_cast<double>(a.size());
        for (auto& v : a) v *= inv;
    }

  private:
    static const std::vector<std::complex<double>>& twiddles(std::size_t n) {
        static thread_local std::unordered_map<std::size_t, std::vector<std::complex<double>>> cache;
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        std::vector<std::complex<double>> w(n / 2);
        const double two_pi = 6.28318530717958647692;
        for (std::size_t j = 0; j < n / 2; ++j)
            w[j] = std::polar(1.0, -two_pi * static_cast<double>(j) / static_cast<double>(n));
        return cache.emplace(n, std::move(w)).first->second;
    }

    static void transform(std::vector<std::complex<double>>& a, bool inverse) {
        const std::size_t n = a.size();
        if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("Fft: size must be a power of two");
        // bit reversal
        for (std::size_t i = 1, j = 0; i < n; ++i) {
            std::size_t bit = n >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }
        const auto& w = twiddles(n);
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t stride = n / len;
            for (std::size_t i = 0; i < n; i += len) {
                for (std::size_t j = 0; j < len / 2; ++j) {
                    std::complex<double> tw = w[j * stride];
                    if (inverse) tw = std::conj(tw);
                    std::complex<double> u = a[i + j];
                    std::complex<double> v = a[i + j + len / 2] * tw;
                    a[i + j] = u + v;
                    a[i + j + len / 2] = u - v;
                }
            }
        }
    }
};

}  // namespace fracwave::detail

#endif
