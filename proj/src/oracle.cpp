#include "toep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "toep/banded_lu.hpp"
#include "toep/curve.hpp"
#include "toep/errors.hpp"

namespace toep {

Eigen::MatrixXcd FiniteSection::dense(cplx shift) const {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j)
        for (int i = std::max(0, j - symbol.m()); i <= std::min(N - 1, j + symbol.k()); ++i)
            a(i, j) = entry(i, j);
    for (int i = 0; i < N; ++i) a(i, i) -= shift;
    return a;
}

FiniteSection toeplitz_section(const LaurentSymbol& b, int N) {
    if (N < b.band_width())
        throw std::invalid_argument("toeplitz_section: N must be at least m + k + 1");
    return FiniteSection{b, N};
}

double sigma_min_svd(const Eigen::MatrixXcd& a) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

namespace {

double vec_norm(const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

double sigma_min_inverse_iteration(const FiniteSection& s, cplx w, std::uint64_t seed,
                                   double tol, int restarts) {
    const int n = s.N;
    const int kl = s.symbol.k(); // positive indices sit below the diagonal
    const int ku = s.symbol.m();
    const BandedLU lu = BandedLU::factor(
        n, kl, ku, [&](int i, int j) { return s.entry(i, j) - (i == j ? w : cplx{0.0, 0.0}); });
    const double scale = s.symbol.wiener_norm() + std::abs(w);
    if (lu.singular() || lu.min_pivot() < 1e-300)
        throw SingularSectionError("sigma_min_inverse_iteration: exactly singular section");

    const int max_iter = 4000;
    const double eff_tol = std::min(tol, n <= 128 ? 1e-12 : 1e-10);

    double best_lambda = 0.0;
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(r + 1));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::vector<cplx> v(static_cast<size_t>(n));
        for (cplx& x : v) x = cplx(gauss(rng), gauss(rng));
        double nv = vec_norm(v);
        for (cplx& x : v) x /= nv;

        // The Rayleigh sequence lambda_t -> lambda_max((A^H A)^{-1}) is
        // geometric with ratio (sigma_1/sigma_2)^2; Aitken extrapolation of it
        // gives an accurate limit even when the bottom singular values cluster.
        double lambda = 0.0, lam_prev = 0.0, est_prev = 0.0;
        int settled = 0;
        for (int it = 0; it < max_iter; ++it) {
            std::vector<cplx> u = v;
            lu.solve_adjoint(u); // u = A^{-H} v, so v^H (A^H A)^{-1} v = ||u||^2
            const double nrm_u = vec_norm(u);
            const double lam_new = nrm_u * nrm_u;
            if (!std::isfinite(lam_new)) break;
            lu.solve(u); // u = (A^H A)^{-1} v
            const double nu = vec_norm(u);
            if (!std::isfinite(nu) || nu == 0.0) break;
            for (size_t i = 0; i < u.size(); ++i) v[i] = u[i] / nu;

            double est = lam_new;
            if (it >= 2) {
                const double d1 = lambda - lam_prev;
                const double d2 = lam_new - lambda;
                if (d1 != 0.0) {
                    const double q = d2 / d1;
                    if (q > 0.0 && q < 1.0) est = lam_new + d2 * q / (1.0 - q);
                }
                const bool direct = std::abs(lam_new - lambda) <= eff_tol * lam_new;
                const bool extrap = est_prev > 0.0 && std::abs(est - est_prev) <= eff_tol * est;
                settled = (direct || extrap) ? settled + 1 : 0;
                if (settled >= 2) {
                    lam_prev = lambda;
                    lambda = est;
                    break;
                }
            }
            est_prev = est;
            lam_prev = lambda;
            lambda = lam_new;
        }
        best_lambda = std::max(best_lambda, lambda);
    }
    if (best_lambda <= 0.0)
        throw SingularSectionError("sigma_min_inverse_iteration: iteration produced no estimate");
    const double sigma = 1.0 / std::sqrt(best_lambda);
    if (sigma < 1e-14 * scale)
        throw SingularSectionError("sigma_min_inverse_iteration: section numerically singular");
    return sigma;
}

double resolvent_norm(const LaurentSymbol& b, cplx w, int N, std::uint64_t seed) {
    return 1.0 / sigma_min_inverse_iteration(toeplitz_section(b, N), w, seed);
}

ResolventSample resolvent_norm_extrapolated(const LaurentSymbol& b, cplx w,
                                            std::span<const int> schedule, std::uint64_t seed) {
    if (schedule.size() < 3)
        throw std::invalid_argument("resolvent_norm_extrapolated: schedule needs >= 3 sizes");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1])
            throw std::invalid_argument("resolvent_norm_extrapolated: schedule must increase");

    ResolventSample s;
    s.w = w;
    s.dist = distance_to_curve(b, w, 1024, 1e-9).lower;
    for (int n : schedule) s.norm_estimates.emplace_back(n, resolvent_norm(b, w, n, seed));

    std::vector<double> v;
    double vmax = 0.0;
    for (const auto& [n, val] : s.norm_estimates) {
        v.push_back(val);
        vmax = std::max(vmax, val);
    }
    bool settled = true;
    for (size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i] - v[i - 1]) >= 0.01 * std::abs(v[i])) settled = false;

    double extrap = v.back();
    if (!settled) {
        const double d1 = v[v.size() - 2] - v[v.size() - 3];
        const double d2 = v[v.size() - 1] - v[v.size() - 2];
        const double denom = d2 - d1;
        if (std::abs(denom) > 1e-12 * std::abs(v.back())) {
            const double aitken = v.back() - d2 * d2 / denom;
            if (std::isfinite(aitken) && aitken <= 2.0 * v.back()) extrap = aitken;
        }
    }
    s.extrapolated = std::max(extrap, vmax); // never below the observed values
    s.lrg_ratio = s.dist * s.extrapolated;
    s.qrg_ratio = s.dist * s.dist * s.extrapolated / (s.dist + 1.0);
    return s;
}

bool lower_bound_check(const ResolventSample& s) {
    return s.dist > 0.0 && s.extrapolated * s.dist >= 0.95;
}

} // namespace toep
