#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "greenkernel/errors.hpp"
#include "greenkernel/function.hpp"
#include "greenkernel/hilbert.hpp"

namespace greenkernel {

enum class KernelRole { green, finite_rank, composite, fundamental, counterexample };

std::string to_string(KernelRole role);

/// A symmetric bivariate function on Ω×Ω with derivative oracles in its first argument.
///
/// Kernels flagged with a diagonal kink are smooth only off x = y; asking for a
/// derivative exactly on the diagonal throws KinkError.
class Kernel {
public:
    using ValueFn = std::function<double(const Point&, const Point&)>;
    using DerivFn = std::function<double(const MultiIndex&, const Point&, const Point&)>;

    Kernel(std::string name, Domain domain, KernelRole role, bool diagonal_kink, ValueFn value,
           DerivFn dx);

    [[nodiscard]] double operator()(const Point& x, const Point& y) const;
    [[nodiscard]] double dx(const MultiIndex& alpha, const Point& x, const Point& y) const;

    /// x ↦ k(x, y) as a Function with the kernel's derivative oracle.
    [[nodiscard]] Function section(const Point& y) const;

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Domain& domain() const { return domain_; }
    [[nodiscard]] KernelRole role() const { return role_; }
    [[nodiscard]] bool has_diagonal_kink() const { return kink_; }

    /// Same as operator() and dx but without domain checks.
    [[nodiscard]] double value_unchecked(const Point& x, const Point& y) const { return value_(x, y); }
    [[nodiscard]] double dx_unchecked(const MultiIndex& alpha, const Point& x, const Point& y) const;

private:
    std::string name_;
    Domain domain_;
    KernelRole role_;
    bool kink_;
    ValueFn value_;
    DerivFn dx_;
};

namespace catalog {

/// min{x,y} - xy on (0,1).
Kernel brownian_bridge();
/// min{x,y} on (0,1).
Kernel brownian_motion();
/// min{x,y} - xy + 1/2 on (0,1).
Kernel periodic_min();
/// Green kernel of -d²/dx² + σ² with zero boundary values.
Kernel sobolev_green(double sigma);
/// exp(-σ|x-y|) / (2σ).
Kernel sobolev_exponential(double sigma);
/// -|x-y|/2, a Green kernel of -d²/dx² that is not a reproducing kernel.
Kernel abs_counterexample();
/// φ(x-y) with φ(r) = r² log r / (8π) on the unit square; φ(0) = 0.
Kernel tps_fundamental();

/// Names accepted by by_name(), for error messages and CLI help.
std::vector<std::string> names();
/// Catalog lookup; σ is ignored by parameter-free kernels. Throws InputError.
Kernel by_name(const std::string& name, double sigma = 1.0);

}  // namespace catalog

/// R(x,y) = Σ a_k ψ_k(x) ψ_k(y); identically zero for an empty pair.
Kernel make_R(const NullSpacePair& pair, const Domain& domain);

/// K = G + R, pointwise. Throws DomainError when the domains differ.
Kernel compose_K(const Kernel& G, const Kernel& R);

/// |(K(·,y), f)_H - f(y)| with the quadrature split at y.
double verify_reproducing(const Space& space, const Kernel& k, const Function& f, const Point& y);

/// K_ij = k(x_i, x_j). Throws InputError on duplicate points.
Eigen::MatrixXd gram(const Kernel& k, const std::vector<Point>& points);

enum class PdVerdict { positive_definite, singular, indefinite };

std::string to_string(PdVerdict verdict);

struct PdCheck {
    PdVerdict verdict;
    Eigen::MatrixXd factor;   // lower Cholesky factor when positive definite
    double min_eigenvalue;    // NaN unless the eigenvalue fallback ran
};

/// Cholesky with pivot threshold 1e-13 · max diagonal; on failure the sign
/// of the smallest symmetric eigenvalue separates singular from indefinite.
PdCheck pd_check(const Eigen::MatrixXd& matrix);

class NotPositiveDefiniteError : public Error {
public:
    explicit NotPositiveDefiniteError(PdVerdict verdict);
    [[nodiscard]] PdVerdict verdict() const { return verdict_; }

private:
    PdVerdict verdict_;
};

}  // namespace greenkernel
