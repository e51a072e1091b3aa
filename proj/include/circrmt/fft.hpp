#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace circrmt {

/// Unnormalized in-place DFT of `howmany` contiguous length-N columns:
/// out_k = sum_j x_j exp(sign * 2 pi i jk / N), sign in {-1, +1}.
/// Plans are created once per (N, howmany, sign) and shared; safe to call
/// from several threads.
void dft_inplace(std::complex<double>* data, std::size_t N, std::size_t howmany, int sign);

std::vector<std::complex<double>> dft(std::span<const std::complex<double>> x, int sign);

/// Smallest power of two >= m (and >= 1).
std::size_t next_pow2(std::size_t m);

}  // namespace circrmt
