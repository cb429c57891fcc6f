#include "toep/divisor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toep/curve.hpp"
#include "toep/errors.hpp"

namespace toep {

std::vector<cplx> roots_of_p(const LaurentSymbol& b, cplx w) {
    if (!b.two_sided())
        throw HypothesisError("roots_of_p: symbol must be two-sided (m >= 1 and k >= 1)");
    const int deg = b.m() + b.k();
    std::vector<cplx> c(static_cast<size_t>(deg + 1));
    for (int i = 0; i <= deg; ++i) c[static_cast<size_t>(i)] = b.coeff(i - b.m());
    c[static_cast<size_t>(b.m())] -= w;
    return aberth_roots(c);
}

ZeroDivisor split_divisor(const LaurentSymbol& b, std::vector<cplx> roots, double band, cplx w) {
    if (!(band > 0.0 && band < 0.1))
        throw std::invalid_argument("split_divisor: band must lie in (0, 0.1)");
    if (static_cast<int>(roots.size()) != b.m() + b.k())
        throw std::invalid_argument("split_divisor: need m + k roots");

    std::sort(roots.begin(), roots.end(), [](cplx a, cplx c) {
        const double ma = std::abs(a), mc = std::abs(c);
        if (ma != mc) return ma < mc;
        return std::arg(a) < std::arg(c);
    });

    cplx prod = 1.0;
    for (const cplx& z : roots) prod *= z;
    const cplx expected =
        (((b.m() + b.k()) % 2 == 0) ? 1.0 : -1.0) * b.coeff(-b.m()) / b.coeff(b.k());
    if (std::abs(prod - expected) > 1e-8 * std::abs(expected)) {
        std::ostringstream os;
        os << "split_divisor: Vieta product check failed, |prod - expected| = "
           << std::abs(prod - expected);
        throw NonConvergenceError(os.str());
    }

    ZeroDivisor d;
    d.roots = std::move(roots);
    d.band = band;
    d.w = w;
    for (int i = 0; i < static_cast<int>(d.roots.size()); ++i) {
        const double r = std::abs(d.roots[static_cast<size_t>(i)]);
        if (std::abs(r - 1.0) <= band) d.unimodular.push_back(i);
        else if (r < 1.0) d.interior.push_back(i);
        else d.exterior.push_back(i);
    }
    return d;
}

bool count_check(const LaurentSymbol& b, cplx w, double band) {
    const ZeroDivisor d = split_divisor(b, roots_of_p(b, w), band, w);
    return d.counts_match(b.m(), b.k());
}

double curve_diameter(const LaurentSymbol& b, int n_points) {
    const cplx center = b.coeff(0);
    double r = 0.0;
    for (int i = 0; i < n_points; ++i)
        r = std::max(r, std::abs(b.eval(unit(two_pi * i / n_points)) - center));
    return 2.0 * r;
}

std::vector<cplx> curve_offset_grid(const LaurentSymbol& b, double offset, int n_points) {
    std::vector<cplx> out;
    out.reserve(static_cast<size_t>(2 * n_points) + 64);
    for (int i = 0; i < n_points; ++i) {
        const double t = two_pi * i / n_points;
        const cplx z = unit(t);
        const cplx tangent = cplx(0.0, 1.0) * z * b.eval_derivative(z);
        const double speed = std::abs(tangent);
        if (speed < 1e-12) continue;
        const cplx normal = cplx(0.0, 1.0) * tangent / speed;
        const cplx p = b.eval(z);
        out.push_back(p + offset * normal);
        out.push_back(p - offset * normal);
    }
    // Where the tangent degenerates the normal is undirected; probe a star of
    // directions around those curve points instead.
    for (const cplx& c : detect_cusps(b, 0.2)) {
        const cplx p = b.eval(c / std::abs(c));
        for (int q = 0; q < 8; ++q) out.push_back(p + offset * unit(pi * q / 4.0));
    }
    return out;
}

const char* to_string(RegularityVerdict v) {
    switch (v) {
        case RegularityVerdict::Regular: return "regular";
        case RegularityVerdict::Irregular: return "irregular";
        case RegularityVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

RegularityReport regularity_scan(const LaurentSymbol& b, const ScanConfig& cfg) {
    if (!b.two_sided())
        throw HypothesisError("regularity_scan: symbol must be two-sided");

    const int m = b.m();
    const double diam = curve_diameter(b);
    const int n_ring = std::max(cfg.ring_points, 64 * (b.m() + b.k()));

    RegularityReport rep;
    rep.inf_exterior_modulus = std::numeric_limits<double>::infinity();

    // Irregularity certificates: gap to the unit circle dips below margin/4
    // and keeps shrinking across consecutive refinement levels.
    int interior_cert_run = 0, exterior_cert_run = 0;
    bool interior_irregular = false, exterior_irregular = false;
    double prev_gap_in = std::numeric_limits<double>::infinity();
    double prev_gap_ex = std::numeric_limits<double>::infinity();

    for (int level = 0; level <= cfg.max_level; ++level) {
        const double d = diam * std::pow(2.0, -level);
        if (d < 1e-10 * diam) break;
        RegularityLevel stat;
        stat.level = level;
        stat.offset = d;
        stat.inf_exterior = std::numeric_limits<double>::infinity();

        for (const cplx& w : curve_offset_grid(b, d, n_ring)) {
            std::vector<cplx> roots;
            try {
                roots = roots_of_p(b, w);
            } catch (const NonConvergenceError&) {
                continue;
            }
            ZeroDivisor div;
            try {
                div = split_divisor(b, roots, cfg.band, w);
            } catch (const NonConvergenceError&) {
                continue;
            }
            // Membership in Omega(b) by the argument principle: no unimodular
            // root and exactly m interior roots.
            if (!div.counts_match(b.m(), b.k())) continue;
            ++stat.samples;
            const double zin = std::abs(div.roots[static_cast<size_t>(m - 1)]);
            const double zex = std::abs(div.roots[static_cast<size_t>(m)]);
            if (zin > stat.sup_interior) stat.sup_interior = zin;
            if (zex < stat.inf_exterior) stat.inf_exterior = zex;
            if (zin > rep.sup_interior_modulus) {
                rep.sup_interior_modulus = zin;
                rep.sup_interior_argmax_w = w;
            }
            if (zex < rep.inf_exterior_modulus) {
                rep.inf_exterior_modulus = zex;
                rep.inf_exterior_argmin_w = w;
            }
        }
        rep.grid_stats.push_back(stat);

        const double gap_in = 1.0 - rep.sup_interior_modulus;
        const double gap_ex = rep.inf_exterior_modulus - 1.0;
        if (gap_in < 0.25 * cfg.margin && gap_in < 0.97 * prev_gap_in) ++interior_cert_run;
        else if (gap_in >= 0.25 * cfg.margin) interior_cert_run = 0;
        if (gap_ex < 0.25 * cfg.margin && gap_ex < 0.97 * prev_gap_ex) ++exterior_cert_run;
        else if (gap_ex >= 0.25 * cfg.margin) exterior_cert_run = 0;
        prev_gap_in = gap_in;
        prev_gap_ex = gap_ex;
        if (interior_cert_run >= 3) interior_irregular = true;
        if (exterior_cert_run >= 3) exterior_irregular = true;
        if (interior_irregular && exterior_irregular) break;
    }

    rep.regular_interior = rep.sup_interior_modulus <= 1.0 - cfg.margin &&
                           rep.sup_interior_modulus > 0.0;
    rep.regular_exterior = std::isfinite(rep.inf_exterior_modulus) &&
                           rep.inf_exterior_modulus >= 1.0 + cfg.margin;
    rep.r_estimate = rep.sup_interior_modulus;
    rep.R_estimate = rep.inf_exterior_modulus;

    if (rep.regular_interior || rep.regular_exterior)
        rep.verdict = RegularityVerdict::Regular;
    else if (interior_irregular && exterior_irregular)
        rep.verdict = RegularityVerdict::Irregular;
    else
        rep.verdict = RegularityVerdict::Inconclusive;
    return rep;
}

GraceResult apolar_grace_test(const LaurentSymbol& b, int s) {
    if (b.m() != 1) throw HypothesisError("apolar_grace_test: requires m = 1");
    const int k = b.k();
    if (s < 0 || s > k - 1)
        throw HypothesisError("apolar_grace_test: s must lie in [0, k-1]");
    double binom = 1.0;
    for (int i = 0; i < s; ++i) binom *= static_cast<double>(k + 1 - i) / (i + 1);
    const double lhs = std::abs(b.coeff(k - s));
    const double rhs = binom * std::abs(b.coeff(-1));
    GraceResult g;
    g.applies = lhs > rhs;
    if (g.applies) g.rho = std::pow(rhs / lhs, 1.0 / (k + 1 - s));
    return g;
}

} // namespace toep
