#pragma once

#include <optional>
#include <vector>

#include "toep/poly.hpp"
#include "toep/scan_config.hpp"
#include "toep/symbol.hpp"

namespace toep {

/// Roots of P(z, w) = z^m (b(z) - w) split across the unit circle.
/// Roots are sorted by ascending modulus, ties by ascending argument;
/// interior/unimodular/exterior hold index lists into `roots`.
struct ZeroDivisor {
    std::vector<cplx> roots;
    std::vector<int> interior;   // |z| < 1 - band
    std::vector<int> unimodular; // | |z| - 1 | <= band
    std::vector<int> exterior;   // |z| > 1 + band
    double band = 1e-8;
    cplx w;

    bool counts_match(int m, int k) const {
        return static_cast<int>(interior.size()) == m &&
               static_cast<int>(exterior.size()) == k && unimodular.empty();
    }
};

/// All m+k roots of b_{-m} + ... + (b_0 - w) z^m + ... + b_k z^{m+k}.
/// Requires a two-sided symbol. Throws NonConvergenceError from the finder.
std::vector<cplx> roots_of_p(const LaurentSymbol& b, cplx w);

/// Partition per the band rule; enforces the Vieta product invariant
/// prod z_j = (-1)^{m+k} b_{-m} / b_k to relative 1e-8.
ZeroDivisor split_divisor(const LaurentSymbol& b, std::vector<cplx> roots, double band, cplx w);

/// Divisor counts at a resolvent-set point: interior m, exterior k, no
/// unimodular part.
bool count_check(const LaurentSymbol& b, cplx w, double band = 1e-8);

/// Curve-offset sample points: both normal offsets of an equispaced curve
/// sampling at the given distance, plus 8-direction stars around parameters
/// where the tangent degenerates. Shared by the regularity and growth scans.
std::vector<cplx> curve_offset_grid(const LaurentSymbol& b, double offset, int n_points);

/// Upper estimate of the curve diameter (2 max |b - b_0| over samples).
double curve_diameter(const LaurentSymbol& b, int n_points = 1024);

enum class RegularityVerdict { Regular, Irregular, Inconclusive };

const char* to_string(RegularityVerdict v);

struct RegularityLevel {
    int level = 0;
    double offset = 0.0; // ring distance from the curve
    int samples = 0;     // accepted resolvent-set points
    double sup_interior = 0.0;
    double inf_exterior = 0.0; // +inf when no sample at this level
};

struct RegularityReport {
    RegularityVerdict verdict = RegularityVerdict::Inconclusive;
    bool regular_interior = false; // sup |z_m| stayed <= 1 - margin
    bool regular_exterior = false; // inf |z_{m+1}| stayed >= 1 + margin
    double sup_interior_modulus = 0.0;
    double inf_exterior_modulus = 0.0;
    double r_estimate = 0.0; // = sup_interior_modulus
    double R_estimate = 0.0; // = inf_exterior_modulus
    cplx sup_interior_argmax_w;
    cplx inf_exterior_argmin_w;
    std::vector<RegularityLevel> grid_stats;
};

/// Adaptive ring scan of Omega(b) intersected with |w| <= 2^{m+k} ||b||_W.
/// Tracks the extreme interior/exterior root moduli; a side is declared
/// irregular when its modulus sequence is certified to approach 1 (gap below
/// margin/4 and shrinking across refinement levels).
RegularityReport regularity_scan(const LaurentSymbol& b, const ScanConfig& cfg);

struct GraceResult {
    bool applies = false;
    double rho = 0.0; // certified interior radius when applies
};

/// Apolarity criterion for m = 1: |b_{k-s}| > C(k+1, s) |b_{-1}| certifies
/// that the interior root stays inside radius rho < 1 for every w.
GraceResult apolar_grace_test(const LaurentSymbol& b, int s);

} // namespace toep
