#include "toep/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "toep/errors.hpp"

namespace toep {

namespace {

// Coefficients with modulus below this fraction of ||b||_W are treated as
// zero when re-tightening band edges after arithmetic.
constexpr double kTrimRel = 1e-14;

struct Trimmed {
    int m;
    int k;
    std::vector<cplx> coeffs;
};

Trimmed trim_edges(int m, std::vector<cplx> c) {
    double scale = 0.0;
    for (const cplx& v : c) scale += std::abs(v);
    const double cut = kTrimRel * scale;

    int lo = 0;
    int hi = static_cast<int>(c.size()) - 1;
    while (lo < hi && std::abs(c[static_cast<size_t>(lo)]) <= cut) ++lo;
    while (hi > lo && std::abs(c[static_cast<size_t>(hi)]) <= cut) --hi;

    // Never trim past index 0: the constant coefficient may legitimately be 0.
    lo = std::min(lo, m);
    hi = std::max(hi, m);

    std::vector<cplx> out(c.begin() + lo, c.begin() + hi + 1);
    if (lo > 0 && std::abs(out.front()) <= cut) out.front() = 0.0;
    if (hi < static_cast<int>(c.size()) - 1 && std::abs(out.back()) <= cut) out.back() = 0.0;
    return {m - lo, hi - m, std::move(out)};
}

} // namespace

LaurentSymbol::LaurentSymbol(int m, int k, std::vector<cplx> coeffs)
    : m_(m), k_(k), coeffs_(std::move(coeffs)) {
    if (m_ < 0 || k_ < 0) throw std::invalid_argument("LaurentSymbol: negative band edge");
    if (m_ + k_ < 1) throw std::invalid_argument("LaurentSymbol: constant symbol (m + k < 1)");
    if (static_cast<int>(coeffs_.size()) != m_ + k_ + 1)
        throw std::invalid_argument("LaurentSymbol: coefficient count does not match band");
    if (m_ >= 1 && coeffs_.front() == cplx{0.0, 0.0})
        throw std::invalid_argument("LaurentSymbol: b_{-m} must be nonzero for m >= 1");
    if (k_ >= 1 && coeffs_.back() == cplx{0.0, 0.0})
        throw std::invalid_argument("LaurentSymbol: b_k must be nonzero for k >= 1");
}

LaurentSymbol LaurentSymbol::from_coeff_map(const std::map<int, cplx>& coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("LaurentSymbol: empty coefficient map");
    int lo = coeffs.begin()->first;
    int hi = coeffs.rbegin()->first;
    lo = std::min(lo, 0);
    hi = std::max(hi, 0);
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx{0.0, 0.0});
    for (const auto& [j, v] : coeffs) c[static_cast<size_t>(j - lo)] = v;
    Trimmed t = trim_edges(-lo, std::move(c));
    return LaurentSymbol(t.m, t.k, std::move(t.coeffs));
}

cplx LaurentSymbol::coeff(int j) const {
    if (j < -m_ || j > k_) return {0.0, 0.0};
    return coeffs_[static_cast<size_t>(j + m_)];
}

cplx LaurentSymbol::eval(cplx z) const {
    if (z == cplx{0.0, 0.0}) {
        if (m_ >= 1) throw std::domain_error("LaurentSymbol::eval: z = 0 with negative powers");
        // Analytic polynomial: value is the constant coefficient.
        return coeffs_[static_cast<size_t>(m_)];
    }
    // Horner on the analytic part (indices 0..k) in z.
    cplx plus = coeffs_.back();
    for (int j = k_ - 1; j >= 0; --j) plus = plus * z + coeffs_[static_cast<size_t>(j + m_)];
    if (m_ == 0) return plus;
    // Horner on the co-analytic part (indices -m..-1) in 1/z.
    const cplx zi = 1.0 / z;
    cplx minus = coeffs_.front();
    for (int j = -m_ + 1; j <= -1; ++j) minus = minus * zi + coeffs_[static_cast<size_t>(j + m_)];
    return plus + minus * zi;
}

LaurentSymbol LaurentSymbol::derivative() const {
    // b'(z) = sum j b_j z^{j-1}: indices shift down by one.
    if (m_ == 0 && k_ == 1)
        throw std::domain_error("LaurentSymbol::derivative: result is constant");
    const int lo = -m_ - 1;
    const int hi = k_ - 1;
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx{0.0, 0.0});
    for (int j = -m_; j <= k_; ++j) {
        if (j == 0) continue;
        c[static_cast<size_t>(j - 1 - lo)] = static_cast<double>(j) * coeff(j);
    }
    Trimmed t = trim_edges(-lo, std::move(c));
    return LaurentSymbol(t.m, t.k, std::move(t.coeffs));
}

cplx LaurentSymbol::eval_derivative(cplx z) const {
    cplx plus = 0.0;
    for (int j = k_; j >= 1; --j) plus = plus * z + static_cast<double>(j) * coeff(j);
    if (m_ == 0) return plus;
    const cplx zi = 1.0 / z;
    cplx minus = -static_cast<double>(m_) * coeff(-m_);
    for (int j = -m_ + 1; j <= -1; ++j) minus = minus * zi + static_cast<double>(j) * coeff(j);
    return plus + minus * zi * zi;
}

double LaurentSymbol::theta_deriv_bound(int order) const {
    double s = 0.0;
    for (int j = -m_; j <= k_; ++j)
        s += std::pow(std::abs(static_cast<double>(j)), order) * std::abs(coeff(j));
    return s;
}

double LaurentSymbol::wiener_norm() const {
    double s = 0.0;
    for (const cplx& v : coeffs_) s += std::abs(v);
    return s;
}

double LaurentSymbol::sup_norm(int n_samples) const {
    const int n = std::max(n_samples, 4 * (m_ + k_));
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        best = std::max(best, std::abs(eval(unit(two_pi * i / n))));
    }
    return best + curve_lipschitz() * pi / n;
}

double LaurentSymbol::curve_lipschitz() const { return theta_deriv_bound(1); }

LaurentSymbol LaurentSymbol::plus(const LaurentSymbol& other) const {
    const int lo = -std::max(m_, other.m_);
    const int hi = std::max(k_, other.k_);
    std::vector<cplx> c(static_cast<size_t>(hi - lo + 1), cplx{0.0, 0.0});
    for (int j = lo; j <= hi; ++j) c[static_cast<size_t>(j - lo)] = coeff(j) + other.coeff(j);
    Trimmed t = trim_edges(-lo, std::move(c));
    return LaurentSymbol(t.m, t.k, std::move(t.coeffs));
}

LaurentSymbol LaurentSymbol::scaled(cplx factor) const {
    if (factor == cplx{0.0, 0.0}) throw std::invalid_argument("LaurentSymbol::scaled: zero factor");
    std::vector<cplx> c = coeffs_;
    for (cplx& v : c) v *= factor;
    return LaurentSymbol(m_, k_, std::move(c));
}

LaurentSymbol LaurentSymbol::rotated(double alpha) const {
    std::vector<cplx> c = coeffs_;
    for (int j = -m_; j <= k_; ++j)
        c[static_cast<size_t>(j + m_)] *= unit(alpha * j);
    return LaurentSymbol(m_, k_, std::move(c));
}

WienerSymbol::WienerSymbol(cplx b_minus1, std::vector<cplx> tail)
    : b_minus1_(b_minus1), tail_(std::move(tail)) {
    if (b_minus1_ == cplx{0.0, 0.0})
        throw std::invalid_argument("WienerSymbol: b_{-1} must be nonzero");
    for (size_t j = 0; j < tail_.size(); ++j)
        beta_ += static_cast<double>(j + 1) * std::abs(tail_[j]);
}

cplx WienerSymbol::eval(cplx t) const {
    if (t == cplx{0.0, 0.0}) throw std::domain_error("WienerSymbol::eval: t = 0");
    cplx plus = 0.0;
    for (size_t j = tail_.size(); j-- > 0;) plus = plus * t + tail_[j];
    return plus + b_minus1_ / t;
}

LaurentSymbol WienerSymbol::truncate() const {
    std::map<int, cplx> c;
    c[-1] = b_minus1_;
    for (size_t j = 0; j < tail_.size(); ++j) c[static_cast<int>(j)] = tail_[j];
    return LaurentSymbol::from_coeff_map(c);
}

} // namespace toep
