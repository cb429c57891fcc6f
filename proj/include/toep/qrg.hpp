#pragma once

#include <vector>

#include "toep/symbol.hpp"

namespace toep {

/// Windowed Fourier coefficients of a(t) = 1/(b(t) - w).
struct CoeffWindow {
    int j_min = 0;
    int j_max = 0;
    std::vector<cplx> a; // a[j - j_min]
    int n_fft = 0;
    double pos_l2 = 0.0;      // sqrt(sum_{i>=1} |a_i|^2) over the full transform
    double alias_bound = 0.0; // geometric tail estimate at the window edge

    cplx at(int j) const {
        if (j < j_min || j > j_max) return {0.0, 0.0};
        return a[static_cast<size_t>(j - j_min)];
    }
};

/// Transform approximation of the coefficients from n_fft circle samples
/// (power of two >= 1024). Throws NearCurveError when a sample of b - w is
/// below 1e-10 in modulus.
CoeffWindow inverse_symbol_coeffs(const WienerSymbol& b, cplx w, int n_fft);

/// The unique root of P(z, w) = z (b(z) - w) in the open unit disk, computed
/// on the truncated polynomial. Throws MultiplicityError when the interior
/// root count differs from one.
cplx zeta0_root(const WienerSymbol& b, cplx w);

/// a_1(w) = 1/b_{-1} + 1/(zeta_0 P'(zeta_0, w)) by the residue calculus.
/// Throws DerivativeVanishesError near a degenerate (double-root) point.
cplx a1_by_residue(const WienerSymbol& b, cplx w);

/// B = I - <., e_1> phi with phi = b_{-1} (a_1, a_2, ...); its inverse is the
/// rank-one correction I + <., e_1> phi / (1 - b_{-1} a_1).
struct RankOneInverse {
    std::vector<cplx> phi; // phi[i-1] = b_{-1} a_i, i = 1..trunc_N
    cplx denom;            // 1 - b_{-1} a_1
    double phi_norm = 0.0;
    double norm_bound = 0.0; // 1 + phi_norm / |denom|

    std::vector<cplx> apply_forward(const std::vector<cplx>& v) const; // B v
    std::vector<cplx> apply_inverse(const std::vector<cplx>& v) const; // B^{-1} v
};

RankOneInverse b_inverse_rank_one(const WienerSymbol& b, cplx w, int trunc_N);

struct QRGRecord {
    cplx w;
    double dist = 0.0;
    CoeffWindow a_coeffs;
    cplx zeta0;
    cplx a1_residue;
    cplx a1_fft;
    double phi_norm = 0.0;
    cplx denom;
    double b_inv_norm_bound = 0.0;
    double qrg_bound = 0.0;      // b_inv_norm_bound / dist
    double binv_analytic = 0.0;  // case-split bound: C(b) far out, else 1 + (|w|+beta)/dist
    double beta = 0.0;
    int n_fft_used = 0;
};

/// Full per-point record; the transform size adapts to the pole distances so
/// aliasing stays below the coefficient scale.
QRGRecord qrg_record(const WienerSymbol& b, cplx w, int fft_size_hint = 4096);

double qrg_bound(const WienerSymbol& b, cplx w);

} // namespace toep
