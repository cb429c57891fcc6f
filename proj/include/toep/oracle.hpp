#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "toep/symbol.hpp"

namespace toep {

/// N x N truncation of the Toeplitz matrix: entry (i, j) = b_{i-j}, so
/// positive-index coefficients fill the subdiagonals (column action matches
/// the analytic projection of b(t) t^{j} onto nonnegative powers).
struct FiniteSection {
    LaurentSymbol symbol;
    int N = 0;

    cplx entry(int i, int j) const { return symbol.coeff(i - j); }
    Eigen::MatrixXcd dense(cplx shift = {0.0, 0.0}) const;
};

/// Requires N >= m + k + 1 so the full band is represented.
FiniteSection toeplitz_section(const LaurentSymbol& b, int N);

/// Smallest singular value by full SVD (test oracle path).
double sigma_min_svd(const Eigen::MatrixXcd& a);

/// Smallest singular value of (T_N - w) by inverse iteration on the normal
/// equations (banded LU, shift 0), restarted from random vectors.
double sigma_min_inverse_iteration(const FiniteSection& s, cplx w, std::uint64_t seed,
                                   double tol = 1e-10, int restarts = 3);

/// ||(T_N - w)^{-1}||_2 = 1 / sigma_min. Throws SingularSectionError when the
/// section is numerically singular at w.
double resolvent_norm(const LaurentSymbol& b, cplx w, int N, std::uint64_t seed = 1);

struct ResolventSample {
    cplx w;
    double dist = 0.0; // certified curve distance
    std::vector<std::pair<int, double>> norm_estimates;
    double extrapolated = 0.0;
    std::optional<double> krein; // filled by the factorization layer
    double lrg_ratio = 0.0;      // dist * extrapolated
    double qrg_ratio = 0.0;      // dist^2 * extrapolated / (dist + 1)
};

/// Runs the schedule of section sizes; the extrapolated value is the last
/// entry when increments have settled below 1%, otherwise an Aitken limit of
/// the increment sequence, clamped to at least the largest observed value.
ResolventSample resolvent_norm_extrapolated(const LaurentSymbol& b, cplx w,
                                            std::span<const int> schedule,
                                            std::uint64_t seed = 1);

/// Universal lower bound ||(T-w)^{-1}|| >= 1/dist, with a 5% discretization
/// allowance.
bool lower_bound_check(const ResolventSample& s);

} // namespace toep
