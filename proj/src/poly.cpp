#include "toep/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "toep/errors.hpp"

namespace toep {

cplx poly_eval(std::span<const cplx> c, cplx z) {
    cplx p = 0.0;
    for (size_t j = c.size(); j-- > 0;) p = p * z + c[j];
    return p;
}

void poly_eval_d(std::span<const cplx> c, cplx z, cplx& p, cplx& dp) {
    p = 0.0;
    dp = 0.0;
    for (size_t j = c.size(); j-- > 0;) {
        dp = dp * z + p;
        p = p * z + c[j];
    }
}

double poly_scale_at(std::span<const cplx> c, double abs_z) {
    double s = 0.0;
    double zp = 1.0;
    for (size_t j = 0; j < c.size(); ++j) {
        s += std::abs(c[j]) * zp;
        zp *= abs_z;
    }
    return s;
}

namespace {

void cluster_multiples(std::vector<cplx>& roots, double cluster_rel) {
    const size_t n = roots.size();
    std::vector<int> group(n);
    for (size_t i = 0; i < n; ++i) group[i] = static_cast<int>(i);
    auto find = [&](int i) {
        while (group[static_cast<size_t>(i)] != i) i = group[static_cast<size_t>(i)];
        return i;
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) <= cluster_rel * (1.0 + std::abs(roots[i])))
                group[static_cast<size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));

    std::vector<cplx> sum(n, cplx{0.0, 0.0});
    std::vector<int> count(n, 0);
    for (size_t i = 0; i < n; ++i) {
        int g = find(static_cast<int>(i));
        sum[static_cast<size_t>(g)] += roots[i];
        ++count[static_cast<size_t>(g)];
    }
    for (size_t i = 0; i < n; ++i) {
        int g = find(static_cast<int>(i));
        if (count[static_cast<size_t>(g)] > 1)
            roots[i] = sum[static_cast<size_t>(g)] / static_cast<double>(count[static_cast<size_t>(g)]);
    }
}

} // namespace

std::vector<cplx> aberth_roots(std::span<const cplx> coeffs, const AberthOptions& opt) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) throw std::invalid_argument("aberth_roots: degree < 1");
    if (coeffs.back() == cplx{0.0, 0.0})
        throw std::invalid_argument("aberth_roots: zero leading coefficient");
    if (deg == 1) return {-coeffs[0] / coeffs[1]};

    // Normalize to keep residual scales tame.
    double cmax = 0.0;
    for (const cplx& v : coeffs) cmax = std::max(cmax, std::abs(v));
    std::vector<cplx> c(coeffs.begin(), coeffs.end());
    for (cplx& v : c) v /= cmax;

    // Initial guesses on a circle through the geometric-mean radius, with an
    // angular offset that is never a root symmetry axis.
    double r0 = 1.0;
    if (c.front() != cplx{0.0, 0.0})
        r0 = std::pow(std::abs(c.front() / c.back()), 1.0 / deg);
    r0 = std::clamp(r0, 1e-3, 1e3);
    std::vector<cplx> z(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i)
        z[static_cast<size_t>(i)] = r0 * unit(two_pi * i / deg + 0.43);

    std::vector<bool> done(static_cast<size_t>(deg), false);
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        double max_step = 0.0;
        for (int i = 0; i < deg; ++i) {
            if (done[static_cast<size_t>(i)]) continue;
            cplx p, dp;
            poly_eval_d(c, z[static_cast<size_t>(i)], p, dp);
            const double scale = poly_scale_at(c, std::abs(z[static_cast<size_t>(i)]));
            if (std::abs(p) <= 1e-16 * scale) {
                done[static_cast<size_t>(i)] = true;
                continue;
            }
            if (dp == cplx{0.0, 0.0}) {
                z[static_cast<size_t>(i)] += 1e-3 * (1.0 + std::abs(z[static_cast<size_t>(i)])) * unit(0.77 * i);
                max_step = 1.0;
                continue;
            }
            const cplx newton = p / dp;
            cplx repulse = 0.0;
            for (int j = 0; j < deg; ++j) {
                if (j == i) continue;
                cplx diff = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                if (std::abs(diff) < 1e-14 * (1.0 + std::abs(z[static_cast<size_t>(i)])))
                    diff = 1e-14 * (1.0 + std::abs(z[static_cast<size_t>(i)]));
                repulse += 1.0 / diff;
            }
            const cplx denom = 1.0 - newton * repulse;
            const cplx step = (std::abs(denom) < 1e-12) ? newton : newton / denom;
            z[static_cast<size_t>(i)] -= step;
            max_step = std::max(max_step, std::abs(step) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
        }
        if (max_step < 1e-14) break;
    }

    // Newton polish: quadratic cleanup of the simultaneous iteration output.
    for (int i = 0; i < deg; ++i) {
        for (int it = 0; it < opt.polish_steps; ++it) {
            cplx p, dp;
            poly_eval_d(c, z[static_cast<size_t>(i)], p, dp);
            if (dp == cplx{0.0, 0.0}) break;
            const cplx step = p / dp;
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(z[static_cast<size_t>(i)]))) break;
            z[static_cast<size_t>(i)] -= step;
        }
    }

    cluster_multiples(z, opt.cluster_rel);

    double worst = 0.0;
    for (int i = 0; i < deg; ++i) {
        const double res = std::abs(poly_eval(c, z[static_cast<size_t>(i)]));
        const double scale = poly_scale_at(c, std::abs(z[static_cast<size_t>(i)]));
        worst = std::max(worst, res / scale);
    }
    if (worst > opt.residual_rel) {
        std::ostringstream os;
        os << "aberth_roots: residual gate failed, best relative residual " << worst;
        throw NonConvergenceError(os.str());
    }
    return z;
}

} // namespace toep
