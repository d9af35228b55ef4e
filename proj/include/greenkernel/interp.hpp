#pragma once

#include <istream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "greenkernel/function.hpp"
#include "greenkernel/kernels.hpp"

namespace greenkernel {

/// s(x) = Σ_j c_j k(x, x_j) interpolating values at the sites.
class Interpolant {
public:
    /// Solves Gram·c = values by Cholesky. Throws InputError on duplicate
    /// sites or a size mismatch, NotPositiveDefiniteError when the Gram
    /// matrix is singular or indefinite.
    static Interpolant fit(const Kernel& k, std::vector<Point> sites, Eigen::VectorXd values);

    [[nodiscard]] double evaluate(const Point& x) const;
    [[nodiscard]] std::vector<double> evaluate(const std::vector<Point>& xs) const;

    /// √(cᵀ Gram c).
    [[nodiscard]] double native_norm() const;

    /// s as a Function carrying the kernel's derivative oracle.
    [[nodiscard]] Function as_function() const;

    [[nodiscard]] const Kernel& kernel() const { return kernel_; }
    [[nodiscard]] const std::vector<Point>& sites() const { return sites_; }
    [[nodiscard]] const Eigen::VectorXd& values() const { return values_; }
    [[nodiscard]] const Eigen::VectorXd& coefficients() const { return coeffs_; }
    [[nodiscard]] const Eigen::MatrixXd& gram() const { return gram_; }
    [[nodiscard]] const Eigen::MatrixXd& cholesky_factor() const { return factor_; }

private:
    Interpolant(Kernel k, std::vector<Point> sites, Eigen::VectorXd values, Eigen::MatrixXd gram,
                Eigen::MatrixXd factor, Eigen::VectorXd coeffs);

    Kernel kernel_;
    std::vector<Point> sites_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd factor_;
    Eigen::VectorXd coeffs_;
};

struct ConvergenceRow {
    int sites;
    double sup_error;
};

/// N equispaced interior sites i/(N+1); error = max |s - f| on the 1001-point
/// grid of [a,b] including endpoints.
std::vector<ConvergenceRow> convergence_study(const Kernel& k, const Function& f,
                                              const std::vector<int>& site_counts);

std::vector<Point> equispaced_interior_sites(const Domain& domain, int n);
std::vector<Point> evaluation_grid(const Domain& domain, int n = 1001);

struct SiteData {
    std::vector<Point> sites;
    Eigen::VectorXd values;
};

/// Reads `x,value` (1D) or `x1,x2,value` (2D) rows after a mandatory header.
/// Throws InputError naming the offending row for malformed lines and
/// duplicate sites.
SiteData read_sites_csv(std::istream& in, int dim);

}  // namespace greenkernel
