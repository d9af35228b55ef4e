#include "greenkernel/tps2d.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "greenkernel/errors.hpp"
#include "greenkernel/parallel.hpp"

namespace greenkernel {

namespace {

constexpr double kInv8Pi = 1.0 / (8.0 * std::numbers::pi);

struct StencilEntry {
    int di;
    int dj;
    double w;
};

// h⁴ Δ² on the 13-point stencil.
constexpr std::array<StencilEntry, 13> kBiharmonic{{
    {0, 0, 20.0},
    {1, 0, -8.0}, {-1, 0, -8.0}, {0, 1, -8.0}, {0, -1, -8.0},
    {1, 1, 2.0}, {1, -1, 2.0}, {-1, 1, 2.0}, {-1, -1, 2.0},
    {2, 0, 1.0}, {-2, 0, 1.0}, {0, 2, 1.0}, {0, -2, 1.0},
}};

}  // namespace

double fundamental_phi(const Point& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    if (r2 == 0.0) {
        return 0.0;
    }
    return kInv8Pi * r2 * 0.5 * std::log(r2);
}

double boundary_gamma(int j, const Point& x, const Point& y) {
    const Point d(x[0] - y[0], x[1] - y[1]);
    switch (j) {
        case 1:
        case 2: {
            const double r2 = d[0] * d[0] + d[1] * d[1];
            if (r2 == 0.0) return 0.0;
            return kInv8Pi * (std::log(r2) + 1.0) * d[j - 1];
        }
        case 3:
            return fundamental_phi(d);
        default:
            throw InputError("boundary_gamma index must be 1, 2 or 3");
    }
}

CorrectorProblem CorrectorProblem::thin_plate(const Point& y, int n) {
    CorrectorProblem p;
    p.source = y;
    p.n = n;
    p.data = ClampedData{[y](const Point& x) { return boundary_gamma(3, x, y); },
                         [y](const Point& x) { return boundary_gamma(1, x, y); },
                         [y](const Point& x) { return boundary_gamma(2, x, y); }};
    return p;
}

CorrectorProblem CorrectorProblem::from_function(const Function& f, int n) {
    CorrectorProblem p;
    p.n = n;
    p.requires_interior_source = false;
    p.data = ClampedData{[f](const Point& x) { return f(x); },
                         [f](const Point& x) { return f.derivative({1, 0}, x); },
                         [f](const Point& x) { return f.derivative({0, 1}, x); }};
    return p;
}

GridFunction::GridFunction(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>((n + 1) * (n + 1))) {
        throw InputError("grid function size does not match resolution");
    }
}

std::pair<int, int> GridFunction::node_index(const Point& x) const {
    const int i = static_cast<int>(std::lround(x[0] * n_));
    const int j = static_cast<int>(std::lround(x[1] * n_));
    if (i < 0 || i > n_ || j < 0 || j > n_) {
        return {-1, -1};
    }
    if (std::abs(static_cast<double>(i) / n_ - x[0]) > 1e-12 ||
        std::abs(static_cast<double>(j) / n_ - x[1]) > 1e-12) {
        return {-1, -1};
    }
    return {i, j};
}

double GridFunction::interpolate(const Point& x) const {
    if (x[0] < 0.0 || x[0] > 1.0 || x[1] < 0.0 || x[1] > 1.0) {
        throw DomainError("grid function evaluated outside the unit square at " + x.to_string());
    }
    const auto [ni, nj] = node_index(x);
    if (ni >= 0) {
        return at(ni, nj);
    }
    const double sx = x[0] * n_;
    const double sy = x[1] * n_;
    const int i = std::clamp(static_cast<int>(std::floor(sx)), 0, n_ - 1);
    const int j = std::clamp(static_cast<int>(std::floor(sy)), 0, n_ - 1);
    const double tx = sx - i;
    const double ty = sy - j;
    return (1 - tx) * (1 - ty) * at(i, j) + tx * (1 - ty) * at(i + 1, j) +
           (1 - tx) * ty * at(i, j + 1) + tx * ty * at(i + 1, j + 1);
}

CorrectorSolution solve_corrector(const CorrectorProblem& problem) {
    const int n = problem.n;
    if (n < 16) {
        throw PreconditionError("corrector grid needs n >= 16, got " + std::to_string(n));
    }
    const double h = 1.0 / n;
    if (problem.requires_interior_source) {
        const Point& y = problem.source;
        const double clearance = std::min({y[0], 1.0 - y[0], y[1], 1.0 - y[1]});
        if (clearance < 2.0 * h - 1e-14) {
            throw PreconditionError("source " + y.to_string() + " lies closer than 2h to the boundary");
        }
    }
    const ClampedData& g = problem.data;
    auto node = [n](int i, int j) {
        return Point(static_cast<double>(i) / n, static_cast<double>(j) / n);
    };
    const int m = n - 1;
    auto unknown = [m](int i, int j) { return (j - 1) * m + (i - 1); };
    auto interior = [n](int i, int j) { return i >= 1 && i <= n - 1 && j >= 1 && j <= n - 1; };

    const int count = m * m;
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(count) * 13);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);

    for (int j = 1; j <= n - 1; ++j) {
        for (int i = 1; i <= n - 1; ++i) {
            const int row = unknown(i, j);
            for (const StencilEntry& s : kBiharmonic) {
                const int p = i + s.di;
                const int q = j + s.dj;
                if (interior(p, q)) {
                    triplets.emplace_back(row, unknown(p, q), s.w);
                } else if (p >= 0 && p <= n && q >= 0 && q <= n) {
                    rhs(row) -= s.w * g.value(node(p, q));
                } else if (p == -1) {
                    triplets.emplace_back(row, unknown(1, q), s.w);
                    rhs(row) += s.w * 2.0 * h * g.d1(node(0, q));
                } else if (p == n + 1) {
                    triplets.emplace_back(row, unknown(n - 1, q), s.w);
                    rhs(row) -= s.w * 2.0 * h * g.d1(node(n, q));
                } else if (q == -1) {
                    triplets.emplace_back(row, unknown(p, 1), s.w);
                    rhs(row) += s.w * 2.0 * h * g.d2(node(p, 0));
                } else {  // q == n + 1
                    triplets.emplace_back(row, unknown(p, n - 1), s.w);
                    rhs(row) -= s.w * 2.0 * h * g.d2(node(p, n));
                }
            }
        }
    }
    Eigen::SparseMatrix<double> a(count, count);
    a.setFromTriplets(triplets.begin(), triplets.end());
    a.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) {
        throw SolverError("sparse LU factorization of the biharmonic system failed");
    }
    const Eigen::VectorXd u = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw SolverError("sparse LU solve of the biharmonic system failed");
    }
    const double residual = count > 0 ? (a * u - rhs).cwiseAbs().maxCoeff() : 0.0;

    std::vector<double> values(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            values[static_cast<std::size_t>(j * (n + 1) + i)] =
                interior(i, j) ? u(unknown(i, j)) : g.value(node(i, j));
        }
    }
    GridFunction grid(n, std::move(values));

    // Diagnostics on non-corner boundary nodes.
    double normal = 0.0;
    double tangential = 0.0;
    for (int k = 1; k <= n - 1; ++k) {
        const double left = (-3.0 * grid.at(0, k) + 4.0 * grid.at(1, k) - grid.at(2, k)) / (2 * h);
        const double right = (3.0 * grid.at(n, k) - 4.0 * grid.at(n - 1, k) + grid.at(n - 2, k)) / (2 * h);
        const double bottom = (-3.0 * grid.at(k, 0) + 4.0 * grid.at(k, 1) - grid.at(k, 2)) / (2 * h);
        const double top = (3.0 * grid.at(k, n) - 4.0 * grid.at(k, n - 1) + grid.at(k, n - 2)) / (2 * h);
        normal = std::max({normal, std::abs(left - g.d1(node(0, k))), std::abs(right - g.d1(node(n, k))),
                           std::abs(bottom - g.d2(node(k, 0))), std::abs(top - g.d2(node(k, n)))});

        const double t_left = (grid.at(0, k + 1) - grid.at(0, k - 1)) / (2 * h);
        const double t_right = (grid.at(n, k + 1) - grid.at(n, k - 1)) / (2 * h);
        const double t_bottom = (grid.at(k + 1, 0) - grid.at(k - 1, 0)) / (2 * h);
        const double t_top = (grid.at(k + 1, n) - grid.at(k - 1, n)) / (2 * h);
        tangential = std::max({tangential, std::abs(t_left - g.d2(node(0, k))),
                               std::abs(t_right - g.d2(node(n, k))),
                               std::abs(t_bottom - g.d1(node(k, 0))),
                               std::abs(t_top - g.d1(node(k, n)))});
    }
    return {std::move(grid), residual, normal, tangential};
}

ThinPlateGreen::ThinPlateGreen(int n) : n_(n) {
    if (n < 16) {
        throw PreconditionError("thin-plate Green kernel needs n >= 16");
    }
}

const CorrectorSolution& ThinPlateGreen::corrector(const Point& y) const {
    const auto key = std::make_pair(y[0], y[1]);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) {
            return *it->second;
        }
    }
    auto solution =
        std::make_shared<const CorrectorSolution>(solve_corrector(CorrectorProblem::thin_plate(y, n_)));
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = cache_.emplace(key, std::move(solution));
    return *it->second;
}

void ThinPlateGreen::prepare(const std::vector<Point>& sources) const {
    parallel_for(sources.size(), [&](std::size_t i) { (void)corrector(sources[i]); });
}

double ThinPlateGreen::operator()(const Point& x, const Point& y) const {
    if (!Domain::unit_square().contains(x) || !Domain::unit_square().is_interior(y)) {
        throw DomainError("thin-plate Green kernel needs x in the closed square and y inside it");
    }
    const GridFunction& grid = corrector(y).grid;
    const auto [i, j] = grid.node_index(x);
    if (i >= 0) {
        // Use the node's own coordinates so boundary nodes cancel exactly.
        const Point xn = grid.node(i, j);
        return fundamental_phi(Point(xn[0] - y[0], xn[1] - y[1])) - grid.at(i, j);
    }
    return fundamental_phi(Point(x[0] - y[0], x[1] - y[1])) - grid.interpolate(x);
}

Kernel thin_plate_green_kernel(std::shared_ptr<const ThinPlateGreen> green) {
    return Kernel(
        "tps_green", Domain::unit_square(), KernelRole::green, true,
        [green](const Point& x, const Point& y) { return (*green)(x, y); },
        [](const MultiIndex&, const Point&, const Point&) -> double {
            throw UnsupportedFunctionError("thin-plate Green kernel is tabulated; no derivatives");
        });
}

double green_tps(const Point& x, const Point& y, int n) {
    const ThinPlateGreen green(n);
    return green(x, y);
}

}  // namespace greenkernel
