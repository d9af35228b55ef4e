#include "greenkernel/function.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "greenkernel/errors.hpp"

namespace greenkernel {

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

// n (n-1) ... (n-k+1)
double falling(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
    }
    return r;
}

void require_same_dim(const Function& f, const Function& g) {
    if (f.dim() != g.dim()) {
        throw DomainError("cannot combine functions of dimension " + std::to_string(f.dim()) +
                          " and " + std::to_string(g.dim()));
    }
}

void require_axis(int axis, int dim) {
    if (dim < 1 || dim > 2 || axis < 0 || axis >= dim) {
        throw DomainError("axis " + std::to_string(axis) + " invalid for dimension " +
                          std::to_string(dim));
    }
}

// Derivative order along `axis`, or -1 when some other axis is differentiated
// (the derivative of a one-axis function is then zero).
int axis_order(const MultiIndex& alpha, int axis) {
    const int other = 1 - axis;
    if (alpha[other] != 0) {
        return -1;
    }
    return alpha[axis];
}

// sin(t + n*pi/2) without rounding the phase shift.
double shifted_sin(double t, int n) {
    switch (n % 4) {
        case 0: return std::sin(t);
        case 1: return std::cos(t);
        case 2: return -std::sin(t);
        default: return -std::cos(t);
    }
}

}  // namespace

Function::Function(int dim)
    : Function(dim, [](const MultiIndex&, const Point&) { return 0.0; }, "0", true) {}

Function Function::from_oracle(int dim, Oracle oracle, std::string name) {
    return Function(dim, std::move(oracle), std::move(name), false);
}

Function Function::from_values(int dim, Evaluator evaluator, std::string name) {
    auto oracle = [evaluator = std::move(evaluator), name](const MultiIndex& alpha, const Point& x) {
        if (alpha.total() != 0) {
            throw UnsupportedFunctionError("function '" + name + "' has no derivative oracle");
        }
        return evaluator(x);
    };
    return Function(dim, std::move(oracle), std::move(name), false);
}

Function Function::renamed(std::string name) const {
    Function f = *this;
    f.name_ = std::move(name);
    return f;
}

Function operator+(const Function& f, const Function& g) {
    require_same_dim(f, g);
    if (f.zero_) return g;
    if (g.zero_) return f;
    auto a = f.oracle_;
    auto b = g.oracle_;
    return Function(
        f.dim_, [a, b](const MultiIndex& alpha, const Point& x) { return a(alpha, x) + b(alpha, x); },
        "(" + f.name_ + " + " + g.name_ + ")", false);
}

Function operator-(const Function& f, const Function& g) {
    require_same_dim(f, g);
    if (g.zero_) return f;
    auto a = f.oracle_;
    auto b = g.oracle_;
    return Function(
        f.dim_, [a, b](const MultiIndex& alpha, const Point& x) { return a(alpha, x) - b(alpha, x); },
        "(" + f.name_ + " - " + g.name_ + ")", false);
}

Function operator*(const Function& f, const Function& g) {
    require_same_dim(f, g);
    if (f.zero_ || g.zero_) {
        return fn::zero(f.dim_);
    }
    auto a = f.oracle_;
    auto b = g.oracle_;
    // General Leibniz rule over multi-indices.
    auto oracle = [a, b](const MultiIndex& alpha, const Point& x) {
        double sum = 0.0;
        for (int i = 0; i <= alpha[0]; ++i) {
            for (int j = 0; j <= alpha[1]; ++j) {
                const MultiIndex beta{i, j};
                const double c = binomial(alpha[0], i) * binomial(alpha[1], j);
                sum += c * a(beta, x) * b(alpha - beta, x);
            }
        }
        return sum;
    };
    return Function(f.dim_, std::move(oracle), f.name_ + "*" + g.name_, false);
}

Function operator*(double c, const Function& f) {
    if (c == 0.0 || f.zero_) {
        return fn::zero(f.dim_);
    }
    auto a = f.oracle_;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c);
    return Function(
        f.dim_, [a, c](const MultiIndex& alpha, const Point& x) { return c * a(alpha, x); },
        std::string(buf) + "*" + f.name_, false);
}

namespace fn {

Function zero(int dim) {
    return Function(dim);
}

Function constant(double c, int dim) {
    if (c == 0.0) {
        return Function(dim);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", c);
    return Function::from_oracle(
        dim, [c](const MultiIndex& alpha, const Point&) { return alpha.total() == 0 ? c : 0.0; },
        buf);
}

Function polynomial(std::vector<Monomial> terms, int dim) {
    for (const Monomial& m : terms) {
        if (m.power[0] < 0 || m.power[1] < 0 || (dim == 1 && m.power[1] != 0)) {
            throw DomainError("invalid monomial power for dimension " + std::to_string(dim));
        }
    }
    auto oracle = [terms = std::move(terms), dim](const MultiIndex& alpha, const Point& x) {
        double sum = 0.0;
        for (const Monomial& m : terms) {
            double v = m.coefficient;
            for (int ax = 0; ax < dim; ++ax) {
                const int p = m.power[ax];
                const int k = alpha[ax];
                if (k > p) {
                    v = 0.0;
                    break;
                }
                v *= falling(p, k) * std::pow(x[ax], p - k);
            }
            sum += v;
        }
        return sum;
    };
    return Function::from_oracle(dim, std::move(oracle), "poly");
}

Function polynomial(std::vector<double> coefficients, int axis, int dim) {
    require_axis(axis, dim);
    std::vector<Monomial> terms;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        if (coefficients[i] == 0.0) {
            continue;
        }
        MultiIndex p;
        p.order[static_cast<std::size_t>(axis)] = static_cast<int>(i);
        terms.push_back({coefficients[i], p});
    }
    if (terms.empty()) {
        return zero(dim);
    }
    return polynomial(std::move(terms), dim);
}

Function coordinate(int axis, int dim) {
    std::vector<double> c{0.0, 1.0};
    return polynomial(c, axis, dim).renamed(axis == 0 ? "x1" : "x2");
}

Function sine(double omega, double phase, int axis, int dim) {
    require_axis(axis, dim);
    return Function::from_oracle(
        dim,
        [=](const MultiIndex& alpha, const Point& x) {
            const int n = axis_order(alpha, axis);
            if (n < 0) return 0.0;
            return std::pow(omega, n) * shifted_sin(omega * x[axis] + phase, n);
        },
        "sin");
}

Function cosine(double omega, double phase, int axis, int dim) {
    require_axis(axis, dim);
    return Function::from_oracle(
        dim,
        [=](const MultiIndex& alpha, const Point& x) {
            const int n = axis_order(alpha, axis);
            if (n < 0) return 0.0;
            return std::pow(omega, n) * shifted_sin(omega * x[axis] + phase, n + 1);
        },
        "cos");
}

Function exponential(double kappa, int axis, int dim) {
    require_axis(axis, dim);
    return Function::from_oracle(
        dim,
        [=](const MultiIndex& alpha, const Point& x) {
            const int n = axis_order(alpha, axis);
            if (n < 0) return 0.0;
            return std::pow(kappa, n) * std::exp(kappa * x[axis]);
        },
        "exp");
}

Function shifted_exponential(double kappa, double shift) {
    return Function::from_oracle(
        1,
        [=](const MultiIndex& alpha, const Point& x) {
            if (alpha[1] != 0) return 0.0;
            return std::pow(kappa, alpha[0]) * std::exp(kappa * (x[0] - shift));
        },
        "exp");
}

Function sinh(double kappa, int axis, int dim) {
    require_axis(axis, dim);
    return Function::from_oracle(
        dim,
        [=](const MultiIndex& alpha, const Point& x) {
            const int n = axis_order(alpha, axis);
            if (n < 0) return 0.0;
            const double t = kappa * x[axis];
            return std::pow(kappa, n) * (n % 2 == 0 ? std::sinh(t) : std::cosh(t));
        },
        "sinh");
}

Function cosh(double kappa, int axis, int dim) {
    require_axis(axis, dim);
    return Function::from_oracle(
        dim,
        [=](const MultiIndex& alpha, const Point& x) {
            const int n = axis_order(alpha, axis);
            if (n < 0) return 0.0;
            const double t = kappa * x[axis];
            return std::pow(kappa, n) * (n % 2 == 0 ? std::cosh(t) : std::sinh(t));
        },
        "cosh");
}

}  // namespace fn

}  // namespace greenkernel
