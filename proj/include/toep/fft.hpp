#pragma once

#include <vector>

#include "toep/types.hpp"

namespace toep {

/// In-place radix-2 transform, size a power of two.
/// Forward: X_k = sum_n x_n e^{-2 pi i n k / N}; inverse includes the 1/N.
void fft_radix2(std::vector<cplx>& a, bool inverse);

} // namespace toep
