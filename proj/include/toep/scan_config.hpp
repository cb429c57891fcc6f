#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace toep {

struct GridBox {
    double x0 = -4.0, x1 = 4.0, y0 = -4.0, y1 = 4.0;
    int nx = 64, ny = 64;
};

/// Shared knobs for grid scans, classification and section schedules.
/// All tolerances are strictly positive; section_schedule strictly increasing.
struct ScanConfig {
    int curve_samples = 8192;       // base curve sampling for classification
    double intersection_tol = 0.0;  // 0 = derive from the sampling gap
    int max_level = 32;             // refinement cap for ring/grid scans
    double margin = 1e-3;           // regularity margin
    double band = 1e-8;             // unimodular band for divisor splitting
    int fft_size = 4096;            // base transform size (power of two)
    std::vector<int> section_schedule = {100, 200, 400};
    int ring_points = 256;          // curve-offset points per refinement ring
    std::uint64_t seed = 1;
    std::optional<GridBox> grid;    // explicit box grid (scan/portrait)

    void validate() const; // throws ConfigError naming the offending key
};

} // namespace toep
