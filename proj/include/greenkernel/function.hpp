#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "greenkernel/geometry.hpp"

namespace greenkernel {

/// A real function on R^d with a derivative oracle.
///
/// Catalog functions (polynomials, trigonometric, exponential and hyperbolic
/// functions along one axis, and sums/products/scalings of these) carry exact
/// oracles. The oracle receives the whole multi-index at once, so mixed
/// partials never depend on differentiation order. Functions built from a
/// bare evaluator only answer α = 0 and throw UnsupportedFunctionError
/// otherwise.
class Function {
public:
    using Oracle = std::function<double(const MultiIndex&, const Point&)>;
    using Evaluator = std::function<double(const Point&)>;

    /// The zero function in dimension `dim`.
    explicit Function(int dim = 1);

    static Function from_oracle(int dim, Oracle oracle, std::string name);
    static Function from_values(int dim, Evaluator evaluator, std::string name);

    [[nodiscard]] double operator()(const Point& x) const { return oracle_(MultiIndex{}, x); }
    [[nodiscard]] double derivative(const MultiIndex& alpha, const Point& x) const {
        return oracle_(alpha, x);
    }

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] bool is_zero() const { return zero_; }

    [[nodiscard]] Function renamed(std::string name) const;

    friend Function operator+(const Function& f, const Function& g);
    friend Function operator-(const Function& f, const Function& g);
    friend Function operator*(const Function& f, const Function& g);
    friend Function operator*(double c, const Function& f);
    friend Function operator-(const Function& f) { return -1.0 * f; }

private:
    Function(int dim, Oracle oracle, std::string name, bool zero)
        : dim_(dim), oracle_(std::move(oracle)), name_(std::move(name)), zero_(zero) {}

    int dim_;
    Oracle oracle_;
    std::string name_;
    bool zero_ = false;
};

struct Monomial {
    double coefficient;
    MultiIndex power;
};

/// Catalog of functions with exact derivative oracles.
namespace fn {

Function constant(double c, int dim = 1);
Function zero(int dim = 1);
/// c[0] + c[1] x + c[2] x^2 + ... along `axis`.
Function polynomial(std::vector<double> coefficients, int axis = 0, int dim = 1);
Function polynomial(std::vector<Monomial> terms, int dim);
/// The coordinate function x_axis.
Function coordinate(int axis = 0, int dim = 1);
/// sin(ω x_axis + phase)
Function sine(double omega, double phase = 0.0, int axis = 0, int dim = 1);
/// cos(ω x_axis + phase)
Function cosine(double omega, double phase = 0.0, int axis = 0, int dim = 1);
/// exp(κ x_axis)
Function exponential(double kappa, int axis = 0, int dim = 1);
/// exp(κ (x - shift)) in 1D; keeps large-κ exponentials in range.
Function shifted_exponential(double kappa, double shift);
Function sinh(double kappa, int axis = 0, int dim = 1);
Function cosh(double kappa, int axis = 0, int dim = 1);

}  // namespace fn

}  // namespace greenkernel
