#pragma once

#include <span>
#include <vector>

#include "toep/types.hpp"

namespace toep {

// c[0..deg] with c[deg] the leading coefficient.
cplx poly_eval(std::span<const cplx> c, cplx z);

// Value and derivative in one pass.
void poly_eval_d(std::span<const cplx> c, cplx z, cplx& p, cplx& dp);

// Magnitude scale sum |c_j| |z|^j, used for residual gates.
double poly_scale_at(std::span<const cplx> c, double abs_z);

struct AberthOptions {
    int max_sweeps = 400;
    int polish_steps = 4;
    // Residual gate |p(z)| <= residual_rel * sum |c_j||z|^j.
    double residual_rel = 1e-12;
    // Roots closer than cluster_rel * (1 + |z|) collapse to their mean;
    // resolves multiple roots split by the iteration.
    double cluster_rel = 4e-7;
};

// Simultaneous-iteration (Aberth-Ehrlich) root finder for dense complex
// polynomials, Newton-polished. Requires c.front() != 0 and c.back() != 0.
// Throws NonConvergenceError with the best residual when the gate fails.
std::vector<cplx> aberth_roots(std::span<const cplx> coeffs, const AberthOptions& opt = {});

} // namespace toep
