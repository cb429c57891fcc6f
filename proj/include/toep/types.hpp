#pragma once

#include <complex>

namespace toep {

using cplx = std::complex<double>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

inline cplx unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

} // namespace toep
