#pragma once

#include <map>
#include <span>
#include <vector>

#include "toep/types.hpp"

namespace toep {

/// Banded symbol b(z) = sum_{j=-m}^{k} b_j z^j with tight band edges:
/// b_{-m} != 0 when m >= 1, b_k != 0 when k >= 1, and m + k >= 1.
/// Immutable after construction; all member operations are pure.
class LaurentSymbol {
public:
    LaurentSymbol(int m, int k, std::vector<cplx> coeffs);

    // Builds from an index -> coefficient map, trimming zero band edges.
    static LaurentSymbol from_coeff_map(const std::map<int, cplx>& coeffs);

    int m() const { return m_; }
    int k() const { return k_; }
    int band_width() const { return m_ + k_ + 1; }

    // 0 outside [-m, k].
    cplx coeff(int j) const;
    std::span<const cplx> coeffs() const { return coeffs_; }

    // m >= 1 and k >= 1: genuinely two-sided band.
    bool two_sided() const { return m_ >= 1 && k_ >= 1; }

    // Two-sided Horner evaluation. Throws std::domain_error at z = 0 when m >= 1.
    cplx eval(cplx z) const;

    // Termwise power rule; band edges re-tightened. Throws std::domain_error
    // when the derivative degenerates to a constant (m = 0, k = 1 symbols).
    LaurentSymbol derivative() const;

    // b'(z) = sum j b_j z^{j-1}, evaluated directly.
    cplx eval_derivative(cplx z) const;

    // sum |j|^order |b_j|: bounds |d^order/dtheta^order b(e^{i theta})|.
    double theta_deriv_bound(int order) const;

    // sum |b_j|
    double wiener_norm() const;

    // Upper bound for max_T |b|: sampled max plus the Lipschitz correction
    // ||b'||_W * pi / n_samples, so the value stays valid as a cutoff.
    double sup_norm(int n_samples) const;

    // Lipschitz constant of theta -> b(e^{i theta}), i.e. ||b'||_W.
    double curve_lipschitz() const;

    LaurentSymbol plus(const LaurentSymbol& other) const;
    LaurentSymbol scaled(cplx factor) const;

    // b(e^{i alpha} z); the curve is unchanged up to reparametrization.
    LaurentSymbol rotated(double alpha) const;

    bool operator==(const LaurentSymbol& other) const = default;

private:
    int m_ = 0;
    int k_ = 0;
    std::vector<cplx> coeffs_; // coeffs_[j + m_] = b_j
};

/// Truncation of a symbol b(t) = b_{-1} t^{-1} + sum_{j>=0} b_j t^j from the
/// class with beta = sum_{j>=0} (j+1)|b_j| finite. Stores a finite tail.
class WienerSymbol {
public:
    WienerSymbol(cplx b_minus1, std::vector<cplx> tail);

    cplx b_minus1() const { return b_minus1_; }
    std::span<const cplx> tail() const { return tail_; }
    int tail_degree() const { return static_cast<int>(tail_.size()) - 1; }

    double beta() const { return beta_; }

    cplx eval(cplx t) const;

    // LaurentSymbol with m = 1 and k = tail degree (trailing zeros trimmed).
    LaurentSymbol truncate() const;

private:
    cplx b_minus1_;
    std::vector<cplx> tail_; // b_0, b_1, ..., b_J
    double beta_ = 0.0;
};

} // namespace toep
