// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mmcs {

/// x[n] = (1/N) * sum_k X[k] * exp(+j 2 pi k n / N).
/// With this scaling sum_n |x[n]|^2 == (1/N) * sum_k |X[k]|^2 (Parseval).
std::vector<std::complex<double>> inverse_dft_scaled(std::span<const std::complex<double>> x);

/// Unnormalized backward transform: sum_k X[k] * exp(+j 2 pi k n / N).
std::vector<std::complex<double>> inverse_dft_raw(std::span<const std::complex<double>> x);

/// Unnormalized forward transform: sum_n x[n] * exp(-j 2 pi k n / N).
std::vector<std::complex<double>> forward_dft(std::span<const std::complex<double>> x);

}  // namespace mmcs
