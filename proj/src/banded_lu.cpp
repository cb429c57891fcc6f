#include "toep/banded_lu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toep {

BandedLU BandedLU::factor(int n, int kl, int ku, const std::function<cplx(int, int)>& entry) {
    BandedLU lu;
    lu.n_ = n;
    lu.kl_ = kl;
    lu.ku_ = ku;
    lu.kv_ = kl + ku; // fill-extended upper bandwidth
    lu.ld_ = lu.kv_ + kl + 1;
    lu.w_.assign(static_cast<size_t>(lu.ld_) * n, cplx{0.0, 0.0});
    lu.ipiv_.resize(static_cast<size_t>(n));
    lu.min_pivot_ = std::numeric_limits<double>::infinity();

    for (int j = 0; j < n; ++j)
        for (int i = std::max(0, j - ku); i <= std::min(n - 1, j + kl); ++i)
            lu.at(i, j) = entry(i, j);

    for (int j = 0; j < n; ++j) {
        const int ilast = std::min(n - 1, j + kl);
        int p = j;
        for (int i = j + 1; i <= ilast; ++i)
            if (std::abs(lu.at(i, j)) > std::abs(lu.at(p, j))) p = i;
        lu.ipiv_[static_cast<size_t>(j)] = p;

        const int jlast = std::min(n - 1, j + lu.kv_);
        if (p != j)
            for (int jc = j; jc <= jlast; ++jc) std::swap(lu.at(j, jc), lu.at(p, jc));

        const cplx piv = lu.at(j, j);
        const double apiv = std::abs(piv);
        lu.min_pivot_ = std::min(lu.min_pivot_, apiv);
        if (apiv == 0.0) {
            lu.singular_ = true;
            continue;
        }
        for (int i = j + 1; i <= ilast; ++i) {
            const cplx mult = lu.at(i, j) / piv;
            lu.at(i, j) = mult;
            for (int jc = j + 1; jc <= jlast; ++jc) lu.at(i, jc) -= mult * lu.at(j, jc);
        }
    }
    return lu;
}

void BandedLU::solve(std::vector<cplx>& x) const {
    for (int j = 0; j < n_; ++j) {
        const int p = ipiv_[static_cast<size_t>(j)];
        if (p != j) std::swap(x[static_cast<size_t>(j)], x[static_cast<size_t>(p)]);
        const cplx xj = x[static_cast<size_t>(j)];
        for (int i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i)
            x[static_cast<size_t>(i)] -= at(i, j) * xj;
    }
    for (int j = n_ - 1; j >= 0; --j) {
        x[static_cast<size_t>(j)] /= at(j, j);
        const cplx xj = x[static_cast<size_t>(j)];
        for (int i = std::max(0, j - kv_); i < j; ++i)
            x[static_cast<size_t>(i)] -= at(i, j) * xj;
    }
}

void BandedLU::solve_adjoint(std::vector<cplx>& x) const {
    // A = P L U  =>  A^H = U^H L^H P^T; forward on U^H, backward on L^H,
    // then undo the pivots in reverse.
    for (int j = 0; j < n_; ++j) {
        cplx s = x[static_cast<size_t>(j)];
        for (int i = std::max(0, j - kv_); i < j; ++i)
            s -= std::conj(at(i, j)) * x[static_cast<size_t>(i)];
        x[static_cast<size_t>(j)] = s / std::conj(at(j, j));
    }
    for (int j = n_ - 1; j >= 0; --j) {
        cplx s = x[static_cast<size_t>(j)];
        for (int i = j + 1; i <= std::min(n_ - 1, j + kl_); ++i)
            s -= std::conj(at(i, j)) * x[static_cast<size_t>(i)];
        x[static_cast<size_t>(j)] = s;
        const int p = ipiv_[static_cast<size_t>(j)];
        if (p != j) std::swap(x[static_cast<size_t>(j)], x[static_cast<size_t>(p)]);
    }
}

} // namespace toep
