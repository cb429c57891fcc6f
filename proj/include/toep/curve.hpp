#pragma once

#include <optional>
#include <vector>

#include "toep/scan_config.hpp"
#include "toep/symbol.hpp"

namespace toep {

/// Equispaced sampling of the symbol curve b(e^{i theta}).
struct CurveSampling {
    int n = 0;
    int refinement_level = 0;
    std::vector<double> theta;
    std::vector<cplx> points;

    static CurveSampling make(const LaurentSymbol& b, int n, int level = 0);
};

/// Certified bracket lower <= min_T |b(t) - w| <= upper.
struct CurveDistance {
    double lower = 0.0;
    double upper = 0.0;
};

/// Branch-and-bound distance from w to the curve. `n0` seeds the subdivision;
/// the bracket tightens until rel_tol or the segment budget is hit.
CurveDistance distance_to_curve(const LaurentSymbol& b, cplx w, int n0 = 0,
                                double rel_tol = 1e-10, long max_segments = 1 << 21);

/// Winding number of b(t) - w over the unit circle, computed from principal
/// argument increments on adaptively subdivided segments; each accepted
/// segment is certified to stay off w. Throws OnCurveError when the point
/// cannot be separated from the curve at the subdivision budget.
int winding(const LaurentSymbol& b, cplx w, int n0 = 0);

/// Gohberg description of the resolvent set: off-curve and winding zero.
/// Points on (or numerically indistinguishable from) the curve return false.
bool in_resolvent_set(const LaurentSymbol& b, cplx w);

/// Certified lower bound for dist(w, sigma(T_b)) at points of the resolvent
/// set, where the spectral boundary lies on the curve; clamps at 0.
double distance_to_spectrum(const LaurentSymbol& b, cplx w, int n0 = 0);

struct IntersectionPair {
    double theta1 = 0.0; // canonical: 0 <= theta1 < theta2 < 2 pi
    double theta2 = 0.0;
    cplx w;              // common curve value
    double residual = 0.0;
};

/// All parameter pairs mapping to the same curve point, found by spatial
/// hashing of samples and polished by a damped 2-d Newton iteration.
/// Separation rule: candidate pairs differ by more than one sampling gap.
std::vector<IntersectionPair> detect_self_intersections(const LaurentSymbol& b, int n,
                                                        double tol);

/// Unimodular roots of b' (roots of z^{m+1} b'(z) with | |z|-1 | < tol),
/// Newton-polished on b'.
std::vector<cplx> detect_cusps(const LaurentSymbol& b, double tol = 1e-8);

struct CoefficientTest {
    bool passes_weak = false;
    bool passes_strict = false;
    int which_sign = 0; // +1: |b_1| dominates, -1: |b_{-1}| dominates, 0: neither
};

/// Coefficient sufficient condition for the Jordan property,
/// |b_{+-1}| >= |b_{-+1}| + sum_{j>=2} j(|b_j| + |b_{-j}|).
/// Requires max(m, k) >= 2; throws HypothesisError otherwise.
CoefficientTest coefficient_lj_test(const LaurentSymbol& b);

enum class LJVerdict { LJ, JordanWithCusps, SelfIntersecting, Inconclusive };

const char* to_string(LJVerdict v);

struct LJReport {
    LJVerdict verdict = LJVerdict::Inconclusive;
    std::optional<CoefficientTest> coefficient_test; // absent when max(m,k) < 2
    std::vector<IntersectionPair> self_intersections;
    std::vector<cplx> cusps;
    bool degenerate_segment = false; // all pairs share theta1 + theta2 (mod 2 pi)

    // Certification diagnostics at the final refinement level.
    int samples_used = 0;
    double min_separated_distance = 0.0; // over pairs separated beyond delta_inj
    double lipschitz_gap = 0.0;          // 3 L pi / n threshold
    double injectivity_radius = 0.0;     // certified local injectivity window
};

/// Combines the intersection/cusp detectors and the certification margins.
/// LJ requires empty (filtered) intersections, no cusps, and margins that
/// survive refinement; otherwise the verdict degrades as specified.
LJReport classify_lj(const LaurentSymbol& b, const ScanConfig& cfg);

} // namespace toep
