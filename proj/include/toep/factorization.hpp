#pragma once

#include <optional>
#include <vector>

#include "toep/divisor.hpp"
#include "toep/scan_config.hpp"
#include "toep/symbol.hpp"

namespace toep {

/// b(z) - w = a_minus(z) * a_plus(z) with
///   a_minus(z) = b_k prod_{i<=m} (1 - z_i / z)   (interior roots),
///   a_plus(z)  = prod_{j<=k} (z - z_{m+j})       (exterior roots).
struct FactorPair {
    cplx scale;                       // b_k
    std::vector<cplx> interior_roots; // |z| < 1
    std::vector<cplx> exterior_roots; // |z| > 1
    cplx w;

    cplx eval_minus(cplx z) const;
    cplx eval_plus(cplx z) const;
};

/// Builds the factor pair from the split divisor and verifies the
/// reconstruction identity at 1024 circle points to relative 1e-10.
/// Throws ReconstructionError when counts or the identity fail.
FactorPair factorize(const LaurentSymbol& b, cplx w, double band = 1e-8);

/// Certified upper bound of ||a_+^{-1}||_inf * ||a_-^{-1}||_inf via
/// branch-and-bound lower bounds of the factor moduli on the circle.
double krein_bound(const FactorPair& fp, int n_samples = 1024);
double krein_bound(const LaurentSymbol& b, cplx w, int n_samples = 1024);

struct BoundConstants {
    double C1 = 0.0;                 // 2^{m+k} ||b||_W
    double C2 = 0.0;                 // 2 ||b||_inf (upper estimate)
    std::optional<double> C3;        // max_n |z_n(w)|
    std::optional<double> C4;        // prod (1 + |z_{m+j}|)
    std::optional<double> C5;        // |b_k| (1 - r)^m
    std::optional<double> C6;        // (R - 1)^k
};

struct BoundReport {
    double dist = 0.0;  // certified lower bound of dist(w, b(T))
    double krein = 0.0;
    std::optional<double> generic_plus;   // 2^m |b_k| / dist      (|w| <= C2)
    std::optional<double> generic_minus;  // C4 / dist             (|w| <= C2)
    std::optional<double> refined_minus;  // 1/C5 when regular interior
    std::optional<double> refined_plus;   // 1/C6 when regular exterior
    std::optional<double> neumann;        // 3 / dist when |w| >= C2
    BoundConstants constants;
};

BoundReport bound_report(const LaurentSymbol& b, cplx w,
                         const std::optional<RegularityReport>& reg = std::nullopt);

struct LrgLevel {
    int level = 0;
    double offset = 0.0;
    int samples = 0;
    double sup_product = 0.0; // sup of dist * min(krein, neumann) at this level
    cplx argmax_w;
};

struct LrgPoint {
    cplx w;
    double dist = 0.0;
    double krein = 0.0;
    std::optional<double> neumann;
    double product = 0.0;
};

struct LrgResult {
    std::optional<double> c_lrg; // certified only for regular symbols, stabilized
    double sup_product = 0.0;    // empirical sup either way
    cplx argmax_w;
    bool stabilized = false;
    RegularityVerdict regularity = RegularityVerdict::Inconclusive;
    std::vector<LrgLevel> trace;
    std::vector<LrgPoint> points;
};

/// Empirical linear-resolvent-growth constant: sup over an adaptive ring grid
/// of dist(w, sigma) * min(krein, neumann), with a 10% stabilization rule
/// across refinement levels. Without a regular verdict the trace is returned
/// with no certified constant.
LrgResult lrg_constant(const LaurentSymbol& b, const ScanConfig& cfg);
LrgResult lrg_constant(const LaurentSymbol& b, const ScanConfig& cfg,
                       const RegularityReport& reg);

} // namespace toep
