#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "greenkernel/function.hpp"
#include "greenkernel/geometry.hpp"
#include "greenkernel/kernels.hpp"

namespace greenkernel {

/// φ(x) = ‖x‖² log‖x‖ / (8π), with φ(0) = 0.
double fundamental_phi(const Point& x);

/// Boundary data of the thin-plate corrector, j ∈ {1,2,3}:
/// Γ_1, Γ_2 are ∂/∂x_1, ∂/∂x_2 of φ(x - y); Γ_3 is φ(x - y) itself.
double boundary_gamma(int j, const Point& x, const Point& y);

/// Clamped-plate boundary data: a value and the gradient of a function whose
/// trace is prescribed.
struct ClampedData {
    std::function<double(const Point&)> value;
    std::function<double(const Point&)> d1;
    std::function<double(const Point&)> d2;
};

/// Δ²u = 0 on the unit square with u and ∂u/∂n prescribed, on an (n+1)² node grid.
struct CorrectorProblem {
    Point source{0.5, 0.5};
    int n = 64;
    ClampedData data;
    bool requires_interior_source = true;

    /// Boundary data Γ(·, y) for the corrector φ^y.
    static CorrectorProblem thin_plate(const Point& y, int n);
    /// Boundary data taken from a function's trace and gradient (test problems).
    static CorrectorProblem from_function(const Function& f, int n);
};

/// Node values on the uniform grid x_i = i/n, i = 0..n, of the unit square.
class GridFunction {
public:
    GridFunction(int n, std::vector<double> values);

    [[nodiscard]] int n() const { return n_; }
    [[nodiscard]] double at(int i, int j) const {
        return values_[static_cast<std::size_t>(j * (n_ + 1) + i)];
    }
    [[nodiscard]] Point node(int i, int j) const {
        return {static_cast<double>(i) / n_, static_cast<double>(j) / n_};
    }
    /// Exact node value when x is a node, bilinear interpolation otherwise.
    [[nodiscard]] double interpolate(const Point& x) const;
    /// Indices of the node at x, or {-1,-1} when x is not on the grid.
    [[nodiscard]] std::pair<int, int> node_index(const Point& x) const;

    [[nodiscard]] const std::vector<double>& values() const { return values_; }

private:
    int n_;
    std::vector<double> values_;
};

struct CorrectorSolution {
    GridFunction grid;
    /// max |A u - b| of the h⁴-scaled interior equations.
    double stencil_residual;
    /// max over boundary nodes of |one-sided ∂u/∂n - prescribed ∂u/∂n| (O(h) diagnostic).
    double normal_derivative_mismatch;
    /// max over boundary nodes of |tangential difference of u - prescribed tangential derivative|.
    double tangential_derivative_mismatch;
};

/// 13-point biharmonic stencil at interior nodes; boundary values imposed
/// exactly; normal derivatives through ghost nodes u_{-1} = u_1 - 2h ∂u/∂x;
/// sparse LU solve.
CorrectorSolution solve_corrector(const CorrectorProblem& problem);

/// G(x,y) = φ(x - y) - φ^y(x), with the correctors solved per y and cached.
class ThinPlateGreen {
public:
    explicit ThinPlateGreen(int n);

    [[nodiscard]] int resolution() const { return n_; }
    [[nodiscard]] double operator()(const Point& x, const Point& y) const;
    [[nodiscard]] const CorrectorSolution& corrector(const Point& y) const;

    /// Solves the correctors for all points (concurrently) ahead of evaluation.
    void prepare(const std::vector<Point>& sources) const;

private:
    int n_;
    mutable std::mutex mutex_;
    mutable std::map<std::pair<double, double>, std::shared_ptr<const CorrectorSolution>> cache_;
};

/// The thin-plate Green kernel as a Kernel (values only, role G).
Kernel thin_plate_green_kernel(std::shared_ptr<const ThinPlateGreen> green);

double green_tps(const Point& x, const Point& y, int n);

}  // namespace greenkernel
