#include "toep/curve.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

#include "toep/errors.hpp"
#include "toep/poly.hpp"

namespace toep {

namespace {

double circ_dist(double a, double b) {
    double d = std::fmod(std::abs(a - b), two_pi);
    return std::min(d, two_pi - d);
}

struct Segment {
    double ta, tb;
    cplx pa, pb;
};

} // namespace

CurveSampling CurveSampling::make(const LaurentSymbol& b, int n, int level) {
    CurveSampling s;
    s.n = std::max(n, 64 * (b.m() + b.k()));
    s.refinement_level = level;
    s.theta.resize(static_cast<size_t>(s.n));
    s.points.resize(static_cast<size_t>(s.n));
    for (int i = 0; i < s.n; ++i) {
        s.theta[static_cast<size_t>(i)] = two_pi * i / s.n;
        s.points[static_cast<size_t>(i)] = b.eval(unit(s.theta[static_cast<size_t>(i)]));
    }
    return s;
}

namespace {

double dist_point_segment(cplx w, cplx a, cplx b) {
    const cplx ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(w - a);
    const cplx aw = w - a;
    const double t =
        std::clamp((aw.real() * ab.real() + aw.imag() * ab.imag()) / len2, 0.0, 1.0);
    return std::abs(w - (a + t * ab));
}

} // namespace

CurveDistance distance_to_curve(const LaurentSymbol& b, cplx w, int n0, double rel_tol,
                                long max_segments) {
    const double L = b.theta_deriv_bound(1);
    const double M2 = b.theta_deriv_bound(2); // |d^2/dtheta^2| bound: chord sag <= M2 len^2 / 8
    const int n = std::max({n0, 64 * (b.m() + b.k()), 128});

    std::deque<Segment> active;
    double upper = std::numeric_limits<double>::infinity();
    {
        cplx prev = b.eval(unit(0.0));
        upper = std::abs(prev - w);
        for (int i = 1; i <= n; ++i) {
            const double t = two_pi * i / n;
            const cplx p = (i == n) ? b.eval(unit(0.0)) : b.eval(unit(t));
            upper = std::min(upper, std::abs(p - w));
            active.push_back({two_pi * (i - 1) / n, t, prev, p});
            prev = p;
        }
    }

    long evals = n;
    double lower = 0.0;
    for (int round = 0; round < 64; ++round) {
        // Keep only segments that can still beat the incumbent.
        std::deque<Segment> next;
        lower = upper;
        for (const Segment& s : active) {
            const double len = s.tb - s.ta;
            const double lb_chord = dist_point_segment(w, s.pa, s.pb) - 0.125 * M2 * len * len;
            const double lb_lip =
                std::min(std::abs(s.pa - w), std::abs(s.pb - w)) - 0.5 * L * len;
            const double lb = std::max(lb_chord, lb_lip);
            if (lb < upper) {
                next.push_back(s);
                lower = std::min(lower, lb);
            }
        }
        active.swap(next);
        if (active.empty() || upper - lower <= rel_tol * upper || evals > max_segments) break;

        std::deque<Segment> split;
        for (const Segment& s : active) {
            const double tm = 0.5 * (s.ta + s.tb);
            const cplx pm = b.eval(unit(tm));
            ++evals;
            upper = std::min(upper, std::abs(pm - w));
            split.push_back({s.ta, tm, s.pa, pm});
            split.push_back({tm, s.tb, pm, s.pb});
        }
        active.swap(split);
    }
    return {std::max(0.0, lower), upper};
}

int winding(const LaurentSymbol& b, cplx w, int n0) {
    const double L = b.curve_lipschitz();
    const int n = std::max({n0, 64 * (b.m() + b.k()), 256});

    std::deque<Segment> work;
    {
        cplx prev = b.eval(unit(0.0));
        const cplx first = prev;
        for (int i = 1; i <= n; ++i) {
            const cplx p = (i == n) ? first : b.eval(unit(two_pi * i / n));
            work.push_back({two_pi * (i - 1) / n, two_pi * i / n, prev, p});
            prev = p;
        }
    }

    double total = 0.0;
    long budget = 1L << 22;
    while (!work.empty()) {
        Segment s = work.front();
        work.pop_front();
        const double len = s.tb - s.ta;
        const double h = 0.5 * len;
        const double dmin = std::min(std::abs(s.pa - w), std::abs(s.pb - w));
        const double clearance = dmin - L * h;
        // Accept when the segment is certified off w and the continuous
        // argument increment cannot wrap past the principal branch.
        if (clearance > 0.0 && L * len <= 0.5 * pi * clearance) {
            total += std::arg((s.pb - w) / (s.pa - w));
            continue;
        }
        if (--budget < 0 || len < 1e-15)
            throw OnCurveError("winding: point cannot be certified off the curve");
        const double tm = 0.5 * (s.ta + s.tb);
        const cplx pm = b.eval(unit(tm));
        work.push_back({s.ta, tm, s.pa, pm});
        work.push_back({tm, s.tb, pm, s.pb});
    }

    const long wind = std::lround(total / two_pi);
    if (std::abs(total - two_pi * static_cast<double>(wind)) > 0.3)
        throw OnCurveError("winding: argument sum failed to close to a multiple of 2 pi");
    return static_cast<int>(wind);
}

bool in_resolvent_set(const LaurentSymbol& b, cplx w) {
    const CurveDistance d = distance_to_curve(b, w, 0, 1e-6, 1 << 18);
    if (d.lower <= 0.0) return false;
    try {
        return winding(b, w) == 0;
    } catch (const OnCurveError&) {
        return false;
    }
}

double distance_to_spectrum(const LaurentSymbol& b, cplx w, int n0) {
    return distance_to_curve(b, w, n0).lower;
}

namespace {

struct CellKey {
    long x, y;
    bool operator==(const CellKey&) const = default;
};

struct CellHash {
    size_t operator()(const CellKey& k) const {
        return std::hash<long>()(k.x * 73856093L ^ k.y * 19349663L);
    }
};

using HashGrid = std::unordered_map<CellKey, std::vector<int>, CellHash>;

HashGrid build_grid(const std::vector<cplx>& pts, double cell) {
    HashGrid grid;
    grid.reserve(pts.size());
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const CellKey key{static_cast<long>(std::floor(pts[static_cast<size_t>(i)].real() / cell)),
                          static_cast<long>(std::floor(pts[static_cast<size_t>(i)].imag() / cell))};
        grid[key].push_back(i);
    }
    return grid;
}

template <typename Fn>
void for_each_close_pair(const std::vector<cplx>& pts, const HashGrid& grid, double cell,
                         Fn&& fn) {
    for (const auto& [key, bucket] : grid) {
        for (long dx = -1; dx <= 1; ++dx) {
            for (long dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find(CellKey{key.x + dx, key.y + dy});
                if (it == grid.end()) continue;
                for (int i : bucket) {
                    for (int j : it->second) {
                        if (j <= i) continue;
                        if (std::abs(pts[static_cast<size_t>(i)] - pts[static_cast<size_t>(j)]) < cell)
                            fn(i, j);
                    }
                }
            }
        }
    }
}

// Damped least-squares Newton for b(e^{i t1}) = b(e^{i t2}).
// Returns true when the residual target is met with separated parameters.
bool newton_pair(const LaurentSymbol& b, double& t1, double& t2, double res_target) {
    auto value = [&](double a, double c) { return b.eval(unit(a)) - b.eval(unit(c)); };
    cplx f = value(t1, t2);
    for (int it = 0; it < 60; ++it) {
        if (std::abs(f) <= res_target) break;
        const cplx g1 = cplx(0.0, 1.0) * unit(t1) * b.eval_derivative(unit(t1));
        const cplx g2 = -cplx(0.0, 1.0) * unit(t2) * b.eval_derivative(unit(t2));
        // Normal equations of the 2x2 real system, Tikhonov-guarded.
        const double a11 = std::norm(g1), a22 = std::norm(g2);
        const double a12 = g1.real() * g2.real() + g1.imag() * g2.imag();
        const double r1 = -(g1.real() * f.real() + g1.imag() * f.imag());
        const double r2 = -(g2.real() * f.real() + g2.imag() * f.imag());
        const double lam = 1e-12 * (a11 + a22) + 1e-300;
        const double det = (a11 + lam) * (a22 + lam) - a12 * a12;
        double d1 = ((a22 + lam) * r1 - a12 * r2) / det;
        double d2 = ((a11 + lam) * r2 - a12 * r1) / det;
        double step = 1.0;
        bool improved = false;
        for (int halves = 0; halves < 24; ++halves) {
            const cplx ftry = value(t1 + step * d1, t2 + step * d2);
            if (std::abs(ftry) < std::abs(f)) {
                t1 += step * d1;
                t2 += step * d2;
                f = ftry;
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return std::abs(f) <= res_target;
}

} // namespace

std::vector<IntersectionPair> detect_self_intersections(const LaurentSymbol& b, int n,
                                                        double tol) {
    if (b.m() + b.k() == 1) return {}; // circle: injective
    n = std::max(n, 256 * (b.m() + b.k()));
    const CurveSampling samp = CurveSampling::make(b, n);
    const double scale = 1.0 + b.wiener_norm();
    const double res_target = 1e-12 * scale;
    const double sep_min = 1.5 * two_pi / n;

    tol = std::max(tol, 1e-12);
    const HashGrid grid = build_grid(samp.points, tol);

    std::vector<std::pair<int, int>> candidates;
    for_each_close_pair(samp.points, grid, tol, [&](int i, int j) {
        if (circ_dist(samp.theta[static_cast<size_t>(i)], samp.theta[static_cast<size_t>(j)]) >
            sep_min)
            candidates.emplace_back(i, j);
    });
    if (candidates.size() > 200000) candidates.resize(200000);

    std::vector<IntersectionPair> pairs;
    for (const auto& [i, j] : candidates) {
        double t1 = samp.theta[static_cast<size_t>(i)];
        double t2 = samp.theta[static_cast<size_t>(j)];
        if (!newton_pair(b, t1, t2, res_target)) continue;
        t1 = std::fmod(t1, two_pi);
        if (t1 < 0) t1 += two_pi;
        t2 = std::fmod(t2, two_pi);
        if (t2 < 0) t2 += two_pi;
        if (t1 > t2) std::swap(t1, t2);
        // Pairs that collapsed onto the diagonal are sampling artifacts.
        if (circ_dist(t1, t2) < 1e-6) continue;
        IntersectionPair p;
        p.theta1 = t1;
        p.theta2 = t2;
        const cplx v1 = b.eval(unit(t1));
        const cplx v2 = b.eval(unit(t2));
        p.w = 0.5 * (v1 + v2);
        p.residual = std::abs(v1 - v2);
        pairs.push_back(p);
    }

    std::sort(pairs.begin(), pairs.end(), [](const IntersectionPair& a, const IntersectionPair& c) {
        return a.theta1 != c.theta1 ? a.theta1 < c.theta1 : a.theta2 < c.theta2;
    });
    std::vector<IntersectionPair> dedup;
    for (const IntersectionPair& p : pairs) {
        bool fresh = true;
        for (auto it = dedup.rbegin(); it != dedup.rend(); ++it) {
            if (p.theta1 - it->theta1 > 1e-5) break;
            if (circ_dist(p.theta1, it->theta1) < 1e-5 && circ_dist(p.theta2, it->theta2) < 1e-5) {
                fresh = false;
                break;
            }
        }
        if (fresh) dedup.push_back(p);
    }
    return dedup;
}

std::vector<cplx> detect_cusps(const LaurentSymbol& b, double tol) {
    if (b.m() + b.k() == 1) return {}; // b' is a nonzero constant (times a power)
    // z^{m+1} b'(z) = sum_l (l - m) b_{l-m} z^l is an honest polynomial whose
    // roots off 0 are the roots of b'.
    std::vector<cplx> q(static_cast<size_t>(b.m() + b.k() + 1));
    for (int l = 0; l <= b.m() + b.k(); ++l)
        q[static_cast<size_t>(l)] = static_cast<double>(l - b.m()) * b.coeff(l - b.m());
    while (q.size() > 1 && q.back() == cplx{0.0, 0.0}) q.pop_back();
    while (q.size() > 1 && q.front() == cplx{0.0, 0.0}) q.erase(q.begin());
    if (q.size() <= 1) return {};

    std::vector<cplx> roots = aberth_roots(q);
    std::vector<cplx> cusps;
    for (cplx z : roots) {
        if (std::abs(std::abs(z) - 1.0) >= tol) continue;
        for (int it = 0; it < 6; ++it) {
            cplx p, dp;
            poly_eval_d(q, z, p, dp);
            if (dp == cplx{0.0, 0.0}) break;
            z -= p / dp;
        }
        if (std::abs(std::abs(z) - 1.0) < tol) cusps.push_back(z);
    }
    std::sort(cusps.begin(), cusps.end(),
              [](cplx a, cplx c) { return std::arg(a) < std::arg(c); });
    return cusps;
}

CoefficientTest coefficient_lj_test(const LaurentSymbol& b) {
    if (std::max(b.m(), b.k()) < 2)
        throw HypothesisError("coefficient_lj_test: requires max(m, k) >= 2");
    double tail = 0.0;
    for (int j = 2; j <= b.k(); ++j) tail += j * std::abs(b.coeff(j));
    for (int j = 2; j <= b.m(); ++j) tail += j * std::abs(b.coeff(-j));
    const double p1 = std::abs(b.coeff(1));
    const double m1 = std::abs(b.coeff(-1));

    CoefficientTest t;
    const bool up_weak = p1 >= m1 + tail;
    const bool low_weak = m1 >= p1 + tail;
    t.passes_weak = up_weak || low_weak;
    t.passes_strict = (p1 > m1 + tail) || (m1 > p1 + tail);
    t.which_sign = up_weak ? +1 : (low_weak ? -1 : 0);
    return t;
}

const char* to_string(LJVerdict v) {
    switch (v) {
        case LJVerdict::LJ: return "LJ";
        case LJVerdict::JordanWithCusps: return "JordanWithCusps";
        case LJVerdict::SelfIntersecting: return "SelfIntersecting";
        case LJVerdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

// A pair whose parameters both sit inside the fold zone of a cusp is an
// artifact of the vanishing tangent, not a genuine crossing. The zone radius
// comes from |b(t_c e^{i d}) - b(t_c e^{-i d})| ~ L3 d^3 / 3 staying under the
// Newton residual target.
bool cusp_artifact(const IntersectionPair& p, const std::vector<cplx>& cusps, double zone) {
    for (const cplx& c : cusps) {
        const double a = std::arg(c);
        if (circ_dist(p.theta1, a) <= zone && circ_dist(p.theta2, a) <= zone) return true;
    }
    return false;
}

bool mirror_symmetric(const std::vector<IntersectionPair>& pairs) {
    if (pairs.empty()) return false;
    const double s0 = std::fmod(pairs.front().theta1 + pairs.front().theta2, two_pi);
    for (const IntersectionPair& p : pairs) {
        const double s = std::fmod(p.theta1 + p.theta2, two_pi);
        if (circ_dist(s, s0) > 1e-5) return false;
    }
    return true;
}

} // namespace

LJReport classify_lj(const LaurentSymbol& b, const ScanConfig& cfg) {
    if (!b.two_sided())
        throw HypothesisError("classify_lj: symbol must be two-sided (m >= 1 and k >= 1)");

    LJReport rep;
    try {
        rep.coefficient_test = coefficient_lj_test(b);
    } catch (const HypothesisError&) {
        rep.coefficient_test.reset();
    }

    const double cusp_tol = std::max(cfg.band, 1e-8);
    rep.cusps = detect_cusps(b, cusp_tol);

    const double L = b.theta_deriv_bound(1);
    const double L2 = b.theta_deriv_bound(2);
    const double third_deriv = b.theta_deriv_bound(3);
    const double res_target = 1e-12 * (1.0 + b.wiener_norm());
    const double cusp_zone =
        third_deriv > 0.0
            ? std::clamp(4.0 * std::cbrt(6.0 * res_target / third_deriv), 1e-5, 1e-2)
            : 1e-5;

    int n = std::max(cfg.curve_samples, 256 * (b.m() + b.k()));
    const int max_n = 1 << 18;
    for (;; n *= 2) {
        rep.samples_used = n;
        const double auto_tol = 8.0 * L * pi / n;
        const double tol = cfg.intersection_tol > 0.0 ? cfg.intersection_tol : auto_tol;
        std::vector<IntersectionPair> raw = detect_self_intersections(b, n, tol);

        std::vector<IntersectionPair> kept;
        for (const IntersectionPair& p : raw)
            if (!cusp_artifact(p, rep.cusps, cusp_zone)) kept.push_back(p);

        if (!kept.empty()) {
            rep.self_intersections = std::move(kept);
            rep.verdict = LJVerdict::SelfIntersecting;
            rep.degenerate_segment = b.m() == 1 && b.k() == 1 &&
                                     std::abs(std::abs(b.coeff(-1)) - std::abs(b.coeff(1))) <
                                         1e-12 * b.wiener_norm() &&
                                     mirror_symmetric(rep.self_intersections);
            return rep;
        }

        if (!rep.cusps.empty()) {
            rep.verdict = LJVerdict::JordanWithCusps;
            return rep;
        }

        // Certification margins for the LJ verdict: a positive lower bound on
        // |b'| yields a local injectivity window; beyond it, sample pairs must
        // clear three sampling gaps.
        const CurveSampling samp = CurveSampling::make(b, n);
        double min_speed = std::numeric_limits<double>::infinity();
        for (int i = 0; i < samp.n; ++i)
            min_speed = std::min(
                min_speed, std::abs(b.eval_derivative(unit(samp.theta[static_cast<size_t>(i)]))));
        const double mu = min_speed - L2 * pi / n;
        const double gap = 3.0 * L * pi / n;
        rep.lipschitz_gap = gap;

        if (mu > 0.0) {
            const double delta_inj = std::min(1.9 * mu / L2, pi);
            rep.injectivity_radius = delta_inj;
            const double sep_floor = delta_inj - 4.0 * two_pi / n;
            double min_sep_dist = std::numeric_limits<double>::infinity();
            const HashGrid grid = build_grid(samp.points, gap);
            for_each_close_pair(samp.points, grid, gap, [&](int i, int j) {
                if (circ_dist(samp.theta[static_cast<size_t>(i)],
                              samp.theta[static_cast<size_t>(j)]) > sep_floor)
                    min_sep_dist = std::min(
                        min_sep_dist, std::abs(samp.points[static_cast<size_t>(i)] -
                                               samp.points[static_cast<size_t>(j)]));
            });
            rep.min_separated_distance = min_sep_dist;
            if (min_sep_dist > gap) { // no separated pair within the hash radius
                rep.verdict = LJVerdict::LJ;
                return rep;
            }
        }

        if (2 * n > max_n) break;
    }
    rep.verdict = LJVerdict::Inconclusive;
    return rep;
}

} // namespace toep
