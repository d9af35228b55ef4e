#pragma once

#include <string>
#include <vector>

#include "greenkernel/function.hpp"
#include "greenkernel/geometry.hpp"

namespace greenkernel {

/// ρ_α D^α, one summand of a differential operator component.
struct DiffTerm {
    Function coefficient;
    MultiIndex alpha;
};

/// P = (P_1, ..., P_n) with P_j = Σ ρ_α D^α.
///
/// Membership in the admissible operator class is declared by whoever builds
/// the operator; it is recorded, not verified.
class VectorDiffOperator {
public:
    VectorDiffOperator() = default;
    VectorDiffOperator(std::vector<std::vector<DiffTerm>> components, bool admissible = true);

    [[nodiscard]] std::size_t size() const { return components_.size(); }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] bool admissible() const { return admissible_; }
    [[nodiscard]] const std::vector<DiffTerm>& component(std::size_t j) const { return components_[j]; }

    /// (P_j f)(x) without any domain check. Used by quadrature at interior nodes.
    [[nodiscard]] double apply_component(std::size_t j, const Function& f, const Point& x) const;

private:
    std::vector<std::vector<DiffTerm>> components_;
    int order_ = 0;
    bool admissible_ = true;
};

/// b_β D^β restricted to the boundary.
struct BoundaryTerm {
    Function coefficient;
    MultiIndex beta;
};

class VectorBoundaryOperator {
public:
    VectorBoundaryOperator() = default;
    VectorBoundaryOperator(std::vector<std::vector<BoundaryTerm>> components, bool admissible = true);

    [[nodiscard]] std::size_t size() const { return components_.size(); }
    [[nodiscard]] int order() const { return order_; }
    [[nodiscard]] bool admissible() const { return admissible_; }
    [[nodiscard]] const std::vector<BoundaryTerm>& component(std::size_t j) const {
        return components_[j];
    }

    /// (B_j f)(x) without a boundary check.
    [[nodiscard]] double apply_component(std::size_t j, const Function& f, const Point& x) const;

private:
    std::vector<std::vector<BoundaryTerm>> components_;
    int order_ = 0;
    bool admissible_ = true;
};

enum class OperatorTag { neg_second_derivative, neg_second_plus_sigma2, biharmonic_2d };

/// L = Σ P_j* P_j for the catalog systems, applied through closed forms.
class CatalogOperatorL {
public:
    static CatalogOperatorL neg_second_derivative() { return {OperatorTag::neg_second_derivative, 0.0}; }
    static CatalogOperatorL neg_second_plus_sigma2(double sigma);
    static CatalogOperatorL biharmonic_2d() { return {OperatorTag::biharmonic_2d, 0.0}; }

    [[nodiscard]] OperatorTag tag() const { return tag_; }
    [[nodiscard]] double sigma() const { return sigma_; }
    [[nodiscard]] int dim() const { return tag_ == OperatorTag::biharmonic_2d ? 2 : 1; }
    [[nodiscard]] std::string name() const;

    /// (Lf)(x) with no domain check.
    [[nodiscard]] double evaluate(const Function& f, const Point& x) const;

private:
    CatalogOperatorL(OperatorTag tag, double sigma) : tag_(tag), sigma_(sigma) {}

    OperatorTag tag_;
    double sigma_;
};

/// A domain with its P, B and induced L.
struct OperatorSystem {
    Domain domain;
    VectorDiffOperator P;
    VectorBoundaryOperator B;
    CatalogOperatorL L;

    /// P = d/dx, B = I on {0,1}, L = -d²/dx².
    static OperatorSystem min_kernel();
    /// P = (d/dx, σI), B = I on {0,1}, L = -d²/dx² + σ².
    static OperatorSystem sobolev(double sigma);
    /// P = (∂₁₁, √2 ∂₁₂, ∂₂₂) on the unit square, B = (∂₁, ∂₂, I) on its boundary, L = Δ².
    static OperatorSystem thin_plate();
};

/// Component-wise (P_j f)(x); x must lie strictly inside the domain.
std::vector<double> apply_vector_diff(const VectorDiffOperator& P, const Function& f, const Point& x,
                                      const Domain& domain);

/// Component-wise (B_j f)(x); x must lie on the boundary trace.
std::vector<double> apply_vector_boundary(const VectorBoundaryOperator& B, const Function& f,
                                          const Point& x, const Domain& domain);

/// (Lf)(x) for interior x.
double apply_L(const CatalogOperatorL& L, const Function& f, const Point& x, const Domain& domain);

}  // namespace greenkernel
