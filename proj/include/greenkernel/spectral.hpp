#pragma once

#include <span>
#include <vector>

#include "greenkernel/function.hpp"
#include "greenkernel/hilbert.hpp"
#include "greenkernel/kernels.hpp"
#include "greenkernel/quadrature.hpp"

namespace greenkernel {

/// Closed-form eigenpair of L with boundary conditions. The kernel-side
/// eigenvalue is the reciprocal of the operator-side one.
struct EigenPair {
    int index;
    double operator_eigenvalue;  // μ_p
    Function eigenfunction;      // L₂-normalized e_p

    [[nodiscard]] double kernel_eigenvalue() const { return 1.0 / operator_eigenvalue; }
};

/// μ_p = p²π² + σ², e_p = √2 sin(pπx): -d²/dx² + σ² on (0,1) with zero boundary values.
std::vector<EigenPair> dirichlet_eigenpairs(double sigma, int count);

/// Eigenpairs of the Brownian-motion kernel min{x,y}: λ_p = ((p-1/2)π)^{-2},
/// e_p = √2 sin((p-1/2)πx). These satisfy -e'' = λ_p^{-1} e with e(0) = 0 and
/// the nonhomogeneous data at x = 1 generated by R(x,y) = xy.
std::vector<EigenPair> mixed_eigenpairs_brownian(int count);

/// y ↦ ∫_Ω k(x,y) f(x) dx, split at y. The result answers first derivatives
/// by differentiating under the integral (for kinked kernels only |α| ≤ 1,
/// where no diagonal delta term arises).
Function apply_integral_operator(const Kernel& k, const Function& f,
                                 const QuadratureRule& rule = QuadratureRule());

/// Σ_{p ≤ N} μ_p^{-1} e_p(x) e_p(y), accumulated from p = N down to 1.
double mercer_eval(std::span<const EigenPair> pairs, int N, const Point& x, const Point& y);

/// Sup over the grid {i/(n-1)}² of |mercer_eval - k|.
double mercer_sup_error(std::span<const EigenPair> pairs, int N, const Kernel& k, int grid_points);

/// max_{p,q ≤ N} |(√λ_p e_p, √λ_q e_q)_H - δ_pq|.
double onb_check(const Space& space, std::span<const EigenPair> pairs, int N);

/// η_{p,j}(x) = μ_p (Γ_j(x,·), e_p)_Ω with Γ_j(x,y) = Σ_k a_k (B_j ψ_k)(x) ψ_k(y), x on ∂Ω.
double boundary_eta(const Space& space, const EigenPair& pair, std::size_t component, const Point& x);

struct TransferResiduals {
    double kernel_side;    // sup_y |I_K e_p(y) - μ_p^{-1} e_p(y)|
    double operator_side;  // sup_x |L e_p(x) - μ_p e_p(x)|
    double boundary;       // max |B_j e_p - η_{p,j}| over boundary samples
};

/// Both directions of the eigen-transfer for one pair, sampled at `samples`
/// equispaced interior points.
TransferResiduals transfer_residuals(const Space& space, const Kernel& k, const EigenPair& pair,
                                     int samples = 21);

}  // namespace greenkernel
