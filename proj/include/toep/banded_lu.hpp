#pragma once

#include <functional>
#include <vector>

#include "toep/types.hpp"

namespace toep {

/// LU factorization with partial pivoting of a banded matrix, LAPACK-style
/// band storage with kl extra rows for pivoting fill. kl = subdiagonals,
/// ku = superdiagonals.
class BandedLU {
public:
    static BandedLU factor(int n, int kl, int ku,
                           const std::function<cplx(int, int)>& entry);

    void solve(std::vector<cplx>& x) const;         // A x = rhs, in place
    void solve_adjoint(std::vector<cplx>& x) const; // A^H x = rhs, in place

    double min_pivot() const { return min_pivot_; }
    bool singular() const { return singular_; }

private:
    int n_ = 0, kl_ = 0, ku_ = 0, kv_ = 0, ld_ = 0;
    std::vector<cplx> w_;
    std::vector<int> ipiv_;
    double min_pivot_ = 0.0;
    bool singular_ = false;

    cplx& at(int i, int j) { return w_[static_cast<size_t>(j) * ld_ + (kv_ + i - j)]; }
    const cplx& at(int i, int j) const {
        return w_[static_cast<size_t>(j) * ld_ + (kv_ + i - j)];
    }
};

} // namespace toep
