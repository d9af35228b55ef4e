#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "greenkernel/function.hpp"
#include "greenkernel/operators.hpp"
#include "greenkernel/quadrature.hpp"

namespace greenkernel {

struct NullSpaceEntry {
    Function psi;
    double weight;
};

/// A = {ψ_k; a_k}: B-orthonormal null-space functions of L with positive weights.
///
/// Zero weights are represented by leaving the entry out. The constructor checks
/// that every ψ_k is annihilated by L and that the B-Gram matrix is the identity.
class NullSpacePair {
public:
    NullSpacePair() = default;
    NullSpacePair(std::vector<NullSpaceEntry> entries, const OperatorSystem& system,
                  const QuadratureRule& rule = QuadratureRule());

    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] const NullSpaceEntry& operator[](std::size_t k) const { return entries_[k]; }
    [[nodiscard]] const std::vector<NullSpaceEntry>& entries() const { return entries_; }

private:
    std::vector<NullSpaceEntry> entries_;
};

/// H_PB^A: the operator system, the pair A and the quadrature used for every
/// inner product on it.
class Space {
public:
    Space(std::string name, OperatorSystem system, NullSpacePair pair, bool psi_in_null_P,
          QuadratureRule rule = QuadratureRule());

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const OperatorSystem& system() const { return system_; }
    [[nodiscard]] const Domain& domain() const { return system_.domain; }
    [[nodiscard]] const VectorDiffOperator& P() const { return system_.P; }
    [[nodiscard]] const VectorBoundaryOperator& B() const { return system_.B; }
    [[nodiscard]] const CatalogOperatorL& L() const { return system_.L; }
    [[nodiscard]] const NullSpacePair& pair() const { return pair_; }
    [[nodiscard]] bool psi_in_null_P() const { return psi_in_null_P_; }
    [[nodiscard]] const QuadratureRule& rule() const { return rule_; }
    /// (ψ_k, ψ_l)_P, computed once at construction.
    [[nodiscard]] const Eigen::MatrixXd& psi_p_gram() const { return psi_p_gram_; }

    /// Min-kernel system with A empty: H_P⁰, kernel min{x,y} - xy.
    static Space brownian_bridge();
    /// Min-kernel system with A = {x; 1}: kernel min{x,y}.
    static Space brownian_motion();
    /// Min-kernel system with A = {√2/2; 1}: kernel min{x,y} - xy + 1/2.
    static Space periodic();
    /// Sobolev system with A empty.
    static Space sobolev_homogeneous(double sigma);
    /// Sobolev system with the exponential pair: kernel exp(-σ|x-y|)/(2σ).
    static Space sobolev(double sigma);
    /// Thin-plate system with A = Gram-Schmidt of {1, x1-2, x2-2}, unit weights.
    static Space thin_plate();

private:
    std::string name_;
    OperatorSystem system_;
    NullSpacePair pair_;
    bool psi_in_null_P_;
    QuadratureRule rule_;
    Eigen::MatrixXd psi_p_gram_;
};

/// Σ_j ∫_Ω (P_j f)(P_j g), with extra split points on the first axis.
double p_semi_inner(const Space& space, const Function& f, const Function& g,
                    const std::vector<double>& splits = {});

/// Σ_j ∫_∂Ω (B_j f)(B_j g) dS.
double b_semi_inner(const VectorBoundaryOperator& B, const Domain& domain, const QuadratureRule& rule,
                    const Function& f, const Function& g);
double b_semi_inner(const Space& space, const Function& f, const Function& g);

/// f̂_k = (f, ψ_k)_B for k = 1..n_a.
Eigen::VectorXd fourier_coeffs(const Space& space, const Function& f);

/// The H_PB^A inner product
///   (f,g)_P + Σ f̂_k ĝ_k / a_k - Σ_k Σ_l f̂_k ĝ_l (ψ_k, ψ_l)_P,
/// dropping the last sum when every ψ_k lies in Null(P).
double hpb_inner(const Space& space, const Function& f, const Function& g,
                 const std::vector<double>& splits = {});

/// Modified Gram-Schmidt under the B-semi-inner product. Output order follows
/// the input; each output is signed so its first boundary sample with
/// |value| > 1e-12 is positive. Throws DegeneracyError naming the index of a
/// candidate whose projected B-norm falls below 1e-12.
std::vector<Function> orthonormalize(const std::vector<Function>& basis,
                                     const VectorBoundaryOperator& B, const Domain& domain,
                                     const QuadratureRule& rule = QuadratureRule());

/// B-Gram matrix [(f_i, f_j)_B].
Eigen::MatrixXd b_gram(const std::vector<Function>& fs, const VectorBoundaryOperator& B,
                       const Domain& domain, const QuadratureRule& rule = QuadratureRule());

struct Decomposition {
    Function interior_part;  // f_P, vanishing B-trace
    Function boundary_part;  // f_B in Null(L)
    Eigen::VectorXd coefficients;  // of f_B in the orthonormalized basis
    double boundary_residual;      // max |B_j f_P| over boundary samples
};

/// f = f_P + f_B with f_B the B-projection onto the span of a full basis of Null(L).
/// Throws DecompositionError when f_P keeps a nonzero B-trace (basis does not span).
Decomposition decompose(const Function& f, const std::vector<Function>& null_basis,
                        const VectorBoundaryOperator& B, const Domain& domain,
                        const QuadratureRule& rule = QuadratureRule());

/// Ψ_j(x,y) = Σ_k a_k (B_j ψ_k)(x) (B_j ψ_k)(y) on the boundary.
class BoundaryKernel {
public:
    BoundaryKernel(std::size_t component, const Space& space);

    [[nodiscard]] std::size_t component() const { return component_; }
    [[nodiscard]] double operator()(const Point& x, const Point& y) const;
    [[nodiscard]] Eigen::MatrixXd gram(const std::vector<Point>& boundary_points) const;

private:
    std::size_t component_;
    VectorBoundaryOperator B_;
    Domain domain_;
    std::vector<NullSpaceEntry> entries_;
};

std::vector<BoundaryKernel> membership_kernels(const Space& space);

struct MembershipReport {
    bool member;
    Eigen::VectorXd fourier;        // f̂_k over A
    double projection_residual;     // B-norm of f - Σ f̂_k ψ_k
    double decomposition_residual;  // from decompose()
    double norm_squared;            // ‖f‖² in H_PB^A, NaN when not a member
    std::vector<double> psi_min_eigenvalues;  // per Ψ_j Gram on boundary samples
};

/// Decides f ∈ H_PB^A: the B-trace of f must lie in the span of A's ψ_k.
MembershipReport membership(const Space& space, const Function& f,
                            const std::vector<Function>& full_null_basis);

}  // namespace greenkernel
