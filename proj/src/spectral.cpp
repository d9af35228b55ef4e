#include "greenkernel/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "greenkernel/errors.hpp"
#include "greenkernel/parallel.hpp"

namespace greenkernel {

namespace {

constexpr double kPi = std::numbers::pi;

void require_count(int count) {
    if (count < 1) {
        throw InputError("eigenpair count must be at least 1");
    }
}

}  // namespace

std::vector<EigenPair> dirichlet_eigenpairs(double sigma, int count) {
    require_count(count);
    if (sigma < 0.0) {
        throw InputError("sigma must be nonnegative");
    }
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 1; p <= count; ++p) {
        const double w = p * kPi;
        out.push_back({p, w * w + sigma * sigma, std::sqrt(2.0) * fn::sine(w)});
    }
    return out;
}

std::vector<EigenPair> mixed_eigenpairs_brownian(int count) {
    require_count(count);
    std::vector<EigenPair> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int p = 1; p <= count; ++p) {
        const double w = (p - 0.5) * kPi;
        out.push_back({p, w * w, std::sqrt(2.0) * fn::sine(w)});
    }
    return out;
}

Function apply_integral_operator(const Kernel& k, const Function& f, const QuadratureRule& rule) {
    const Domain domain = k.domain();
    return Function::from_oracle(
        domain.dim(),
        [k, f, rule, domain](const MultiIndex& alpha, const Point& y) {
            if (k.has_diagonal_kink() && alpha.total() > 1) {
                throw UnsupportedFunctionError(
                    "integral operator of a kinked kernel supports first derivatives only");
            }
            const QuadratureRule split = rule.with_split(y[0]);
            // ∂_y^α k(x,y) = ∂_x^α k evaluated at (y,x) by symmetry.
            return integrate_interior(
                [&](const Point& x) { return k.dx_unchecked(alpha, y, x) * f(x); }, domain, split);
        },
        "I[" + k.name() + "]" + f.name());
}

double mercer_eval(std::span<const EigenPair> pairs, int N, const Point& x, const Point& y) {
    if (N < 0 || static_cast<std::size_t>(N) > pairs.size()) {
        throw InputError("truncation N exceeds the available eigenpairs");
    }
    double sum = 0.0;
    for (int p = N; p >= 1; --p) {
        const EigenPair& e = pairs[static_cast<std::size_t>(p - 1)];
        sum += e.eigenfunction(x) * e.eigenfunction(y) / e.operator_eigenvalue;
    }
    return sum;
}

double mercer_sup_error(std::span<const EigenPair> pairs, int N, const Kernel& k, int grid_points) {
    if (grid_points < 2) {
        throw InputError("grid needs at least two points per axis");
    }
    const auto n = static_cast<std::size_t>(grid_points);
    // Eigenfunction tables on the grid, then one pass per grid row.
    std::vector<std::vector<double>> table(static_cast<std::size_t>(N), std::vector<double>(n));
    parallel_for(static_cast<std::size_t>(N), [&](std::size_t p) {
        for (std::size_t i = 0; i < n; ++i) {
            table[p][i] = pairs[p].eigenfunction(Point(static_cast<double>(i) / (grid_points - 1)));
        }
    });
    std::vector<double> row_max(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        const Point x(static_cast<double>(i) / (grid_points - 1));
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const Point y(static_cast<double>(j) / (grid_points - 1));
            double sum = 0.0;
            for (int p = N; p >= 1; --p) {
                const auto q = static_cast<std::size_t>(p - 1);
                sum += table[q][i] * table[q][j] / pairs[q].operator_eigenvalue;
            }
            worst = std::max(worst, std::abs(sum - k(x, y)));
        }
        row_max[i] = worst;
    });
    return *std::max_element(row_max.begin(), row_max.end());
}

double onb_check(const Space& space, std::span<const EigenPair> pairs, int N) {
    if (N < 1 || static_cast<std::size_t>(N) > pairs.size()) {
        throw InputError("onb_check needs 1 <= N <= number of pairs");
    }
    std::vector<Function> scaled;
    for (int p = 0; p < N; ++p) {
        const EigenPair& e = pairs[static_cast<std::size_t>(p)];
        scaled.push_back(std::sqrt(e.kernel_eigenvalue()) * e.eigenfunction);
    }
    double worst = 0.0;
    for (int p = 0; p < N; ++p) {
        for (int q = 0; q <= p; ++q) {
            const double v = hpb_inner(space, scaled[static_cast<std::size_t>(p)],
                                       scaled[static_cast<std::size_t>(q)]);
            worst = std::max(worst, std::abs(v - (p == q ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double boundary_eta(const Space& space, const EigenPair& pair, std::size_t component, const Point& x) {
    double sum = 0.0;
    for (const NullSpaceEntry& e : space.pair().entries()) {
        const double overlap = integrate_interior(
            [&](const Point& y) { return e.psi(y) * pair.eigenfunction(y); }, space.domain(),
            space.rule());
        sum += e.weight * space.B().apply_component(component, e.psi, x) * overlap;
    }
    return pair.operator_eigenvalue * sum;
}

TransferResiduals transfer_residuals(const Space& space, const Kernel& k, const EigenPair& pair,
                                     int samples) {
    TransferResiduals r{0.0, 0.0, 0.0};
    const Function image = apply_integral_operator(k, pair.eigenfunction, space.rule());
    const Interval iv = space.domain().axis(0);
    const double lambda = pair.kernel_eigenvalue();
    for (int i = 0; i < samples; ++i) {
        const Point y(iv.lo + iv.length() * i / (samples - 1));
        r.kernel_side = std::max(r.kernel_side, std::abs(image(y) - lambda * pair.eigenfunction(y)));
        const Point x(iv.lo + iv.length() * (i + 1) / (samples + 1));
        r.operator_side =
            std::max(r.operator_side, std::abs(apply_L(space.L(), pair.eigenfunction, x, space.domain()) -
                                               pair.operator_eigenvalue * pair.eigenfunction(x)));
    }
    for (const Point& x : space.domain().boundary_samples()) {
        for (std::size_t j = 0; j < space.B().size(); ++j) {
            const double be = space.B().apply_component(j, pair.eigenfunction, x);
            r.boundary = std::max(r.boundary, std::abs(be - boundary_eta(space, pair, j, x)));
        }
    }
    return r;
}

}  // namespace greenkernel
