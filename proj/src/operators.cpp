#include "greenkernel/operators.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "greenkernel/errors.hpp"

namespace greenkernel {

VectorDiffOperator::VectorDiffOperator(std::vector<std::vector<DiffTerm>> components, bool admissible)
    : components_(std::move(components)), admissible_(admissible) {
    for (const auto& comp : components_) {
        for (const DiffTerm& t : comp) {
            if (!t.coefficient.is_zero()) {
                order_ = std::max(order_, t.alpha.total());
            }
        }
    }
}

double VectorDiffOperator::apply_component(std::size_t j, const Function& f, const Point& x) const {
    double sum = 0.0;
    for (const DiffTerm& t : components_.at(j)) {
        if (t.coefficient.is_zero()) {
            continue;
        }
        sum += t.coefficient(x) * f.derivative(t.alpha, x);
    }
    return sum;
}

VectorBoundaryOperator::VectorBoundaryOperator(std::vector<std::vector<BoundaryTerm>> components,
                                               bool admissible)
    : components_(std::move(components)), admissible_(admissible) {
    for (const auto& comp : components_) {
        for (const BoundaryTerm& t : comp) {
            if (!t.coefficient.is_zero()) {
                order_ = std::max(order_, t.beta.total());
            }
        }
    }
}

double VectorBoundaryOperator::apply_component(std::size_t j, const Function& f,
                                               const Point& x) const {
    // Catalog oracles are exact up to the boundary, so the one-sided interior
    // limit is the oracle value itself.
    double sum = 0.0;
    for (const BoundaryTerm& t : components_.at(j)) {
        if (t.coefficient.is_zero()) {
            continue;
        }
        sum += t.coefficient(x) * f.derivative(t.beta, x);
    }
    return sum;
}

CatalogOperatorL CatalogOperatorL::neg_second_plus_sigma2(double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("sigma must be positive");
    }
    return {OperatorTag::neg_second_plus_sigma2, sigma};
}

std::string CatalogOperatorL::name() const {
    switch (tag_) {
        case OperatorTag::neg_second_derivative: return "neg_second_derivative";
        case OperatorTag::neg_second_plus_sigma2: return "neg_second_plus_sigma2";
        case OperatorTag::biharmonic_2d: return "biharmonic_2d";
    }
    return "unknown";
}

double CatalogOperatorL::evaluate(const Function& f, const Point& x) const {
    switch (tag_) {
        case OperatorTag::neg_second_derivative:
            return -f.derivative(2, x);
        case OperatorTag::neg_second_plus_sigma2:
            return -f.derivative(2, x) + sigma_ * sigma_ * f(x);
        case OperatorTag::biharmonic_2d:
            return f.derivative({4, 0}, x) + 2.0 * f.derivative({2, 2}, x) + f.derivative({0, 4}, x);
    }
    throw UnsupportedFunctionError("unknown operator tag");
}

OperatorSystem OperatorSystem::min_kernel() {
    const Function one = fn::constant(1.0);
    return {Domain::unit_interval(),
            VectorDiffOperator({{DiffTerm{one, 1}}}),
            VectorBoundaryOperator({{BoundaryTerm{one, 0}}}),
            CatalogOperatorL::neg_second_derivative()};
}

OperatorSystem OperatorSystem::sobolev(double sigma) {
    const Function one = fn::constant(1.0);
    return {Domain::unit_interval(),
            VectorDiffOperator({{DiffTerm{one, 1}}, {DiffTerm{fn::constant(sigma), 0}}}),
            VectorBoundaryOperator({{BoundaryTerm{one, 0}}}),
            CatalogOperatorL::neg_second_plus_sigma2(sigma)};
}

OperatorSystem OperatorSystem::thin_plate() {
    const Function one = fn::constant(1.0, 2);
    return {Domain::unit_square(),
            VectorDiffOperator({{DiffTerm{one, {2, 0}}},
                                {DiffTerm{fn::constant(std::sqrt(2.0), 2), {1, 1}}},
                                {DiffTerm{one, {0, 2}}}}),
            VectorBoundaryOperator({{BoundaryTerm{one, {1, 0}}},
                                    {BoundaryTerm{one, {0, 1}}},
                                    {BoundaryTerm{one, {0, 0}}}}),
            CatalogOperatorL::biharmonic_2d()};
}

std::vector<double> apply_vector_diff(const VectorDiffOperator& P, const Function& f, const Point& x,
                                      const Domain& domain) {
    if (!domain.is_interior(x)) {
        throw DomainError("differential operator needs an interior point, got " + x.to_string());
    }
    std::vector<double> out(P.size());
    for (std::size_t j = 0; j < P.size(); ++j) {
        out[j] = P.apply_component(j, f, x);
    }
    return out;
}

std::vector<double> apply_vector_boundary(const VectorBoundaryOperator& B, const Function& f,
                                          const Point& x, const Domain& domain) {
    if (!domain.on_boundary(x)) {
        throw DomainError("boundary operator needs a boundary point, got " + x.to_string());
    }
    std::vector<double> out(B.size());
    for (std::size_t j = 0; j < B.size(); ++j) {
        out[j] = B.apply_component(j, f, x);
    }
    return out;
}

double apply_L(const CatalogOperatorL& L, const Function& f, const Point& x, const Domain& domain) {
    if (L.dim() != domain.dim()) {
        throw UnsupportedFunctionError("operator " + L.name() + " does not act on " +
                                       std::to_string(domain.dim()) + "D domains");
    }
    if (!domain.is_interior(x)) {
        throw DomainError("L needs an interior point, got " + x.to_string());
    }
    return L.evaluate(f, x);
}

}  // namespace greenkernel
