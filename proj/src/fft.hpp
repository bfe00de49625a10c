#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace oscmul::detail {

// In-place unnormalised DFT on natural (0..N-1) ordering.
// sign = -1 forward, +1 backward. dim is 1 or 2 (N x N, row-major).
void dft_inplace(std::vector<std::complex<double>>& data, std::size_t n, int dim, int sign);

}  // namespace oscmul::detail
