#include "toep/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "toep/curve.hpp"
#include "toep/errors.hpp"

namespace toep {

cplx FactorPair::eval_minus(cplx z) const {
    cplx v = scale;
    for (const cplx& r : interior_roots) v *= (1.0 - r / z);
    return v;
}

cplx FactorPair::eval_plus(cplx z) const {
    cplx v = 1.0;
    for (const cplx& r : exterior_roots) v *= (z - r);
    return v;
}

FactorPair factorize(const LaurentSymbol& b, cplx w, double band) {
    const ZeroDivisor d = split_divisor(b, roots_of_p(b, w), band, w);
    if (!d.counts_match(b.m(), b.k()))
        throw ReconstructionError("factorize: divisor counts are not (m, k); w is not in the "
                                  "resolvent set or roots sit on the band");
    FactorPair fp;
    fp.scale = b.coeff(b.k());
    fp.w = w;
    for (int i : d.interior) fp.interior_roots.push_back(d.roots[static_cast<size_t>(i)]);
    for (int i : d.exterior) fp.exterior_roots.push_back(d.roots[static_cast<size_t>(i)]);

    double worst = 0.0;
    for (int i = 0; i < 1024; ++i) {
        const cplx t = unit(two_pi * i / 1024.0);
        const cplx lhs = fp.eval_minus(t) * fp.eval_plus(t);
        const cplx rhs = b.eval(t) - w;
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    if (worst > 1e-10) {
        std::ostringstream os;
        os << "factorize: reconstruction identity failed, relative error " << worst;
        throw ReconstructionError(os.str());
    }
    return fp;
}

namespace {

// Certified bracket of min over T of scale * prod |t - z_j|. Segment lower
// bounds use exact root-to-arc distances, so the subdivision closes in
// geometrically on the argmin.
struct ModBracket {
    double lower, upper;
};

// Exact distance from z to the arc {e^{i t}: t in [ta, tb]}.
double arc_distance(double ta, double tb, cplx z) {
    double rel = std::fmod(std::arg(z) - ta, two_pi);
    if (rel < 0.0) rel += two_pi;
    if (rel <= tb - ta) return std::abs(std::abs(z) - 1.0);
    return std::min(std::abs(z - unit(ta)), std::abs(z - unit(tb)));
}

ModBracket circle_min_root_product(const std::vector<cplx>& roots, double scale, int n0,
                                   double rel_tol, long budget) {
    struct Seg {
        double ta, tb;
    };
    auto value = [&](double t) {
        double v = scale;
        const cplx z = unit(t);
        for (const cplx& r : roots) v *= std::abs(z - r);
        return v;
    };
    auto seg_lower = [&](const Seg& s) {
        double v = scale;
        for (const cplx& r : roots) v *= arc_distance(s.ta, s.tb, r);
        return v;
    };

    const int n = std::max(n0, 64);
    double upper = std::numeric_limits<double>::infinity();
    std::deque<Seg> active;
    for (int i = 0; i < n; ++i) {
        upper = std::min(upper, value(two_pi * i / n));
        active.push_back({two_pi * i / n, two_pi * (i + 1) / n});
    }

    double lower = 0.0;
    long evals = n;
    for (int round = 0; round < 80; ++round) {
        std::deque<Seg> keep;
        lower = upper;
        for (const Seg& s : active) {
            const double lb = seg_lower(s);
            if (lb < upper) {
                keep.push_back(s);
                lower = std::min(lower, lb);
            }
        }
        active.swap(keep);
        if (active.empty() || upper - lower <= rel_tol * upper || evals > budget) break;
        std::deque<Seg> split;
        for (const Seg& s : active) {
            const double tm = 0.5 * (s.ta + s.tb);
            upper = std::min(upper, value(tm));
            ++evals;
            split.push_back({s.ta, tm});
            split.push_back({tm, s.tb});
        }
        active.swap(split);
    }
    return {std::max(0.0, lower), upper};
}

} // namespace

double krein_bound(const FactorPair& fp, int n_samples) {
    // |a_+(t)| = prod |t - z_ext|, |a_-(t)| = |b_k| prod |t - z_int| on |t| = 1.
    // The work budget keeps flat far-field landscapes cheap; the bracket stays
    // a certified upper bound either way.
    const ModBracket plus =
        circle_min_root_product(fp.exterior_roots, 1.0, n_samples, 1e-10, 40000);
    const ModBracket minus =
        circle_min_root_product(fp.interior_roots, std::abs(fp.scale), n_samples, 1e-10, 40000);
    if (plus.lower <= 0.0 || minus.lower <= 0.0)
        throw NonConvergenceError("krein_bound: factor modulus lower bound degenerate");
    return 1.0 / (plus.lower * minus.lower);
}

double krein_bound(const LaurentSymbol& b, cplx w, int n_samples) {
    return krein_bound(factorize(b, w), n_samples);
}

BoundReport bound_report(const LaurentSymbol& b, cplx w,
                         const std::optional<RegularityReport>& reg) {
    BoundReport rep;
    rep.dist = distance_to_curve(b, w, 2048, 1e-10).lower;
    if (rep.dist <= 0.0)
        throw OnCurveError("bound_report: w is not separated from the curve");

    const double sup_upper = b.sup_norm(4096);
    rep.constants.C1 = std::pow(2.0, b.m() + b.k()) * b.wiener_norm();
    rep.constants.C2 = 2.0 * sup_upper;

    const FactorPair fp = factorize(b, w);
    rep.krein = krein_bound(fp);

    if (std::abs(w) >= rep.constants.C2) rep.neumann = 3.0 / rep.dist;

    if (std::abs(w) <= rep.constants.C2) {
        double c3 = 0.0;
        for (const cplx& r : fp.interior_roots) c3 = std::max(c3, std::abs(r));
        for (const cplx& r : fp.exterior_roots) c3 = std::max(c3, std::abs(r));
        double c4 = 1.0;
        for (const cplx& r : fp.exterior_roots) c4 *= (1.0 + std::abs(r));
        rep.constants.C3 = c3;
        rep.constants.C4 = c4;
        rep.generic_plus = std::pow(2.0, b.m()) * std::abs(b.coeff(b.k())) / rep.dist;
        rep.generic_minus = c4 / rep.dist;
    }

    if (reg && reg->regular_interior) {
        const double r = reg->r_estimate;
        const double c5 = std::abs(b.coeff(b.k())) * std::pow(1.0 - r, b.m());
        rep.constants.C5 = c5;
        rep.refined_minus = 1.0 / c5;
    }
    if (reg && reg->regular_exterior) {
        const double biggR = reg->R_estimate;
        const double c6 = std::pow(biggR - 1.0, b.k());
        rep.constants.C6 = c6;
        rep.refined_plus = 1.0 / c6;
    }
    return rep;
}

LrgResult lrg_constant(const LaurentSymbol& b, const ScanConfig& cfg) {
    return lrg_constant(b, cfg, regularity_scan(b, cfg));
}

LrgResult lrg_constant(const LaurentSymbol& b, const ScanConfig& cfg,
                       const RegularityReport& reg) {
    LrgResult res;
    res.regularity = reg.verdict;

    const double diam = curve_diameter(b);
    const double sup_upper = b.sup_norm(4096);
    const int n_ring = std::max(cfg.ring_points, 64 * (b.m() + b.k()));
    const int max_level = std::min(cfg.max_level, 14);

    double prev_sup = 0.0;
    int stable_transitions = 0;
    for (int level = 0; level <= max_level; ++level) {
        const double d = diam * std::pow(2.0, -level);
        if (d < 1e-6 * diam) break; // near-curve exclusion
        LrgLevel stat;
        stat.level = level;
        stat.offset = d;

        for (const cplx& w : curve_offset_grid(b, d, n_ring)) {
            LrgPoint pt;
            pt.w = w;
            const bool neumann_zone = std::abs(w) >= 2.0 * sup_upper;
            try {
                if (neumann_zone) {
                    if (!count_check(b, w, cfg.band)) continue;
                    pt.krein = std::nan(""); // Neumann branch carries the bound here
                } else {
                    pt.krein = krein_bound(factorize(b, w, cfg.band), 512);
                }
            } catch (const ToepError&) {
                continue; // outside Omega(b) or root trouble; skip the point
            }
            pt.dist = distance_to_curve(b, w, 1024, 1e-8).lower;
            if (pt.dist < 1e-6 * diam) continue;
            double bound = std::isnan(pt.krein) ? std::numeric_limits<double>::infinity()
                                                : pt.krein;
            if (neumann_zone) {
                pt.neumann = 3.0 / pt.dist;
                bound = std::min(bound, *pt.neumann);
            }
            pt.product = pt.dist * bound;
            if (pt.product > stat.sup_product) {
                stat.sup_product = pt.product;
                stat.argmax_w = w;
            }
            ++stat.samples;
            res.points.push_back(pt);
        }

        if (stat.sup_product > res.sup_product) {
            res.sup_product = stat.sup_product;
            res.argmax_w = stat.argmax_w;
        }
        res.trace.push_back(stat);

        if (level >= 2) {
            const double change = res.sup_product - prev_sup;
            if (change < 0.10 * res.sup_product) ++stable_transitions;
            else stable_transitions = 0;
            if (stable_transitions >= 2 && level >= 4) {
                res.stabilized = true;
                break;
            }
        }
        prev_sup = res.sup_product;
    }

    if (res.stabilized && reg.verdict == RegularityVerdict::Regular)
        res.c_lrg = res.sup_product;
    return res;
}

} // namespace toep
