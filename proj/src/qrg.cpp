#include "toep/qrg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toep/curve.hpp"
#include "toep/divisor.hpp"
#include "toep/errors.hpp"
#include "toep/fft.hpp"
#include "toep/poly.hpp"

namespace toep {

namespace {

// P(z, w) = z (b(z) - w) = b_{-1} + (b_0 - w) z + b_1 z^2 + ...
std::vector<cplx> p_coeffs(const WienerSymbol& b, cplx w) {
    std::vector<cplx> c;
    c.reserve(b.tail().size() + 2);
    c.push_back(b.b_minus1());
    if (b.tail().empty()) {
        c.push_back(-w);
    } else {
        c.push_back(b.tail()[0] - w);
        for (size_t j = 1; j < b.tail().size(); ++j) c.push_back(b.tail()[j]);
    }
    while (c.size() > 2 && c.back() == cplx{0.0, 0.0}) c.pop_back();
    return c;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p *= 2;
    return p;
}

} // namespace

CoeffWindow inverse_symbol_coeffs(const WienerSymbol& b, cplx w, int n_fft) {
    if (n_fft < 1024 || (n_fft & (n_fft - 1)) != 0)
        throw std::invalid_argument("inverse_symbol_coeffs: n_fft must be a power of two >= 1024");

    std::vector<cplx> f(static_cast<size_t>(n_fft));
    double min_mod = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_fft; ++i) {
        const cplx denom = b.eval(unit(two_pi * i / n_fft)) - w;
        min_mod = std::min(min_mod, std::abs(denom));
        f[static_cast<size_t>(i)] = 1.0 / denom;
    }
    if (min_mod < 1e-10)
        throw NearCurveError("inverse_symbol_coeffs: sample of b - w below 1e-10");

    fft_radix2(f, false);
    for (cplx& x : f) x /= static_cast<double>(n_fft);

    CoeffWindow win;
    win.n_fft = n_fft;
    win.j_min = -n_fft / 2;
    win.j_max = n_fft / 2 - 1;
    win.a.resize(static_cast<size_t>(n_fft));
    double pos2 = 0.0;
    for (int j = win.j_min; j <= win.j_max; ++j) {
        const int k = j >= 0 ? j : j + n_fft;
        const cplx v = f[static_cast<size_t>(k)];
        win.a[static_cast<size_t>(j - win.j_min)] = v;
        if (j >= 1) pos2 += std::norm(v);
    }
    win.pos_l2 = std::sqrt(pos2);

    // Tail estimate from the observed decay at the window edges.
    const double edge = std::max(std::abs(win.at(win.j_max)), std::abs(win.at(win.j_min)));
    win.alias_bound = 2.0 * edge;
    return win;
}

cplx zeta0_root(const WienerSymbol& b, cplx w) {
    const LaurentSymbol trunc = b.truncate();
    const ZeroDivisor d = split_divisor(trunc, roots_of_p(trunc, w), 1e-8, w);
    if (d.interior.size() != 1 || !d.unimodular.empty())
        throw MultiplicityError("zeta0_root: interior root count is not one");
    return d.roots[static_cast<size_t>(d.interior.front())];
}

cplx a1_by_residue(const WienerSymbol& b, cplx w) {
    const cplx z0 = zeta0_root(b, w);
    const std::vector<cplx> c = p_coeffs(b, w);
    cplx p, dp;
    poly_eval_d(c, z0, p, dp);
    const double scale = 1.0 + std::abs(w) + b.beta();
    if (std::abs(dp) < 1e-12 * scale)
        throw DerivativeVanishesError("a1_by_residue: P'(zeta_0, w) vanishes (double root)");
    return 1.0 / b.b_minus1() + 1.0 / (z0 * dp);
}

std::vector<cplx> RankOneInverse::apply_forward(const std::vector<cplx>& v) const {
    std::vector<cplx> out = v;
    const cplx v1 = v.empty() ? cplx{0.0, 0.0} : v[0];
    for (size_t i = 0; i < out.size() && i < phi.size(); ++i) out[i] -= v1 * phi[i];
    return out;
}

std::vector<cplx> RankOneInverse::apply_inverse(const std::vector<cplx>& v) const {
    std::vector<cplx> out = v;
    const cplx v1 = v.empty() ? cplx{0.0, 0.0} : v[0];
    const cplx c = v1 / denom;
    for (size_t i = 0; i < out.size() && i < phi.size(); ++i) out[i] += c * phi[i];
    return out;
}

RankOneInverse b_inverse_rank_one(const WienerSymbol& b, cplx w, int trunc_N) {
    const int n_fft = next_pow2(std::max(4 * trunc_N, 1024));
    const CoeffWindow win = inverse_symbol_coeffs(b, w, n_fft);

    RankOneInverse r;
    r.phi.resize(static_cast<size_t>(trunc_N));
    for (int i = 1; i <= trunc_N; ++i)
        r.phi[static_cast<size_t>(i - 1)] = b.b_minus1() * win.at(i);
    // Using the window's a_1 keeps apply_forward/apply_inverse exact inverses
    // of each other.
    r.denom = 1.0 - b.b_minus1() * win.at(1);
    const double scale = 1.0 + std::abs(b.b_minus1()) * (std::abs(w) + b.beta());
    if (std::abs(r.denom) < 1e-13 * scale)
        throw DenominatorVanishesError("b_inverse_rank_one: 1 - b_{-1} a_1 vanishes");
    double s = 0.0;
    for (const cplx& x : r.phi) s += std::norm(x);
    r.phi_norm = std::sqrt(s);
    r.norm_bound = 1.0 + r.phi_norm / std::abs(r.denom);
    return r;
}

QRGRecord qrg_record(const WienerSymbol& b, cplx w, int fft_size_hint) {
    QRGRecord rec;
    rec.w = w;
    rec.beta = b.beta();

    const LaurentSymbol trunc = b.truncate();
    rec.dist = distance_to_curve(trunc, w, 2048, 1e-9).lower;
    if (rec.dist <= 0.0)
        throw NearCurveError("qrg_record: w is not separated from the curve");

    rec.zeta0 = zeta0_root(b, w);

    // Decay rate of the coefficients: interior pole at zeta_0, exterior poles
    // at the remaining roots of the truncated polynomial.
    double r_ext_min = std::numeric_limits<double>::infinity();
    {
        const ZeroDivisor d = split_divisor(trunc, roots_of_p(trunc, w), 1e-8, w);
        for (int i : d.exterior)
            r_ext_min = std::min(r_ext_min, std::abs(d.roots[static_cast<size_t>(i)]));
    }
    double rho = std::abs(rec.zeta0);
    if (std::isfinite(r_ext_min) && r_ext_min > 1.0) rho = std::max(rho, 1.0 / r_ext_min);
    rho = std::min(rho, 1.0 - 1e-9);

    int n_needed = 1024;
    if (rho > 0.0) {
        const double n_est = std::log(1e-13) / std::log(rho);
        if (std::isfinite(n_est)) n_needed = static_cast<int>(std::min(n_est + 64.0, 2097152.0));
    }
    const int n_fft = std::min(1 << 21, next_pow2(std::max({fft_size_hint, 1024, n_needed})));
    rec.n_fft_used = n_fft;

    rec.a_coeffs = inverse_symbol_coeffs(b, w, n_fft);
    rec.a1_fft = rec.a_coeffs.at(1);
    rec.a1_residue = a1_by_residue(b, w);
    rec.denom = 1.0 - b.b_minus1() * rec.a1_residue;
    rec.phi_norm = std::abs(b.b_minus1()) * rec.a_coeffs.pos_l2;
    rec.b_inv_norm_bound = 1.0 + rec.phi_norm / std::abs(rec.denom);
    rec.qrg_bound = rec.b_inv_norm_bound / rec.dist;

    const double sup_upper = trunc.sup_norm(4096);
    if (std::abs(w) >= 2.0 * sup_upper)
        rec.binv_analytic = 1.0 + 2.0 * (std::abs(w) + rec.beta) / std::abs(w);
    else
        rec.binv_analytic = 1.0 + (std::abs(w) + rec.beta) / rec.dist;

    // Trim the stored window to the informative indices.
    {
        const int keep_pos = std::min(rec.a_coeffs.j_max, 4096);
        const int keep_neg = std::max(rec.a_coeffs.j_min, -512);
        CoeffWindow trimmed;
        trimmed.n_fft = rec.a_coeffs.n_fft;
        trimmed.pos_l2 = rec.a_coeffs.pos_l2;
        trimmed.alias_bound = rec.a_coeffs.alias_bound;
        trimmed.j_min = keep_neg;
        trimmed.j_max = keep_pos;
        trimmed.a.resize(static_cast<size_t>(keep_pos - keep_neg + 1));
        for (int j = keep_neg; j <= keep_pos; ++j)
            trimmed.a[static_cast<size_t>(j - keep_neg)] = rec.a_coeffs.at(j);
        rec.a_coeffs = std::move(trimmed);
    }
    return rec;
}

double qrg_bound(const WienerSymbol& b, cplx w) { return qrg_record(b, w).qrg_bound; }

} // namespace toep
