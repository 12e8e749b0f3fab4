// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT

#ifndef APRSMODEM_FFT_HPP
#define APRSMODEM_FFT_HPP

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace aprsmodem {

// In-place iterative radix-2 FFT. Size must be a power of two.
inline void fft_in_place(std::vector<std::complex<double>>& a)
{
    const std::size_t n = a.size();
    if (n < 2)
    {
        return;
    }

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; i++)
    {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
        {
            j ^= bit;
        }
        j ^= bit;
        if (i < j)
        {
            std::swap(a[i], a[j]);
        }
    }

    for (std::size_t len = 2; len <= n; len <<= 1)
    {
        const double angle = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len)
        {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; k++)
            {
                std::complex<double> u = a[i + k];
                std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

inline std::size_t next_power_of_two(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
    {
        p <<= 1;
    }
    return p;
}

} // namespace aprsmodem

#endif // APRSMODEM_FFT_HPP
