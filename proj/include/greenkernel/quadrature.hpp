#pragma once

#include <array>
#include <functional>
#include <vector>

#include "greenkernel/geometry.hpp"

namespace greenkernel {

using Integrand = std::function<double(const Point&)>;

/// Composite Gauss-Legendre rule with explicit split points.
///
/// Each axis is cut at its split points; every resulting piece is divided into
/// `panels` equal panels carrying `nodes` Gauss-Legendre nodes each. Kernels
/// with a diagonal kink must be split at the kink to keep spectral accuracy.
class QuadratureRule {
public:
    explicit QuadratureRule(int nodes = 32, int panels = 4);

    [[nodiscard]] QuadratureRule with_split(double s, int axis = 0) const;
    [[nodiscard]] QuadratureRule with_splits(const std::vector<double>& s, int axis = 0) const;
    [[nodiscard]] QuadratureRule with_panels(int panels) const;

    [[nodiscard]] int nodes() const { return static_cast<int>(nodes_.size()); }
    [[nodiscard]] int panels() const { return panels_; }
    [[nodiscard]] const std::vector<double>& splits(int axis = 0) const {
        return splits_[static_cast<std::size_t>(axis)];
    }

    /// Reference nodes and weights on (0,1).
    [[nodiscard]] const std::vector<double>& reference_nodes() const { return nodes_; }
    [[nodiscard]] const std::vector<double>& reference_weights() const { return weights_; }

    /// Absolute nodes/weights covering [lo, hi] with this rule's splits on `axis`.
    /// Splits equal to an endpoint are ignored; splits outside throw DomainError.
    void nodes_on(const Interval& iv, int axis, std::vector<double>& x, std::vector<double>& w) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    int panels_;
    std::array<std::vector<double>, 2> splits_;
};

/// ∫_Ω f for an interval or (tensor-product) rectangle.
double integrate_interior(const Integrand& f, const Domain& domain, const QuadratureRule& rule);

/// ∫_∂Ω f dS: f(a) + f(b) in 1D (unit endpoint measure); edgewise composite
/// quadrature counterclockwise around a rectangle.
double integrate_boundary(const Integrand& f, const Domain& domain, const QuadratureRule& rule);

}  // namespace greenkernel
