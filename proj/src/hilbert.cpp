#include "greenkernel/hilbert.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "greenkernel/errors.hpp"

namespace greenkernel {

namespace {

constexpr double kNullTol = 1e-9;
constexpr double kOrthoTol = 1e-10;
constexpr double kDegenerate = 1e-12;
constexpr double kSignTol = 1e-12;
constexpr double kDecomposeTol = 1e-9;

double max_abs_L(const OperatorSystem& sys, const Function& psi) {
    double worst = 0.0;
    for (const Point& x : sys.domain.interior_samples()) {
        const double scale = 1.0 + std::abs(psi(x)) * (1.0 + sys.L.sigma() * sys.L.sigma());
        worst = std::max(worst, std::abs(sys.L.evaluate(psi, x)) / scale);
    }
    return worst;
}

}  // namespace

NullSpacePair::NullSpacePair(std::vector<NullSpaceEntry> entries, const OperatorSystem& system,
                             const QuadratureRule& rule)
    : entries_(std::move(entries)) {
    std::vector<Function> psis;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        const NullSpaceEntry& e = entries_[k];
        if (!(e.weight > 0.0)) {
            throw InputError("null-space weight a_" + std::to_string(k + 1) +
                             " must be positive (omit zero-weight entries)");
        }
        if (max_abs_L(system, e.psi) > kNullTol) {
            throw InputError("psi_" + std::to_string(k + 1) + " is not annihilated by L");
        }
        psis.push_back(e.psi);
    }
    const Eigen::MatrixXd gram = b_gram(psis, system.B, system.domain, rule);
    const Eigen::MatrixXd diff = gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
    if (diff.size() > 0 && diff.cwiseAbs().maxCoeff() > kOrthoTol) {
        throw InputError("null-space functions are not B-orthonormal (max deviation " +
                         std::to_string(diff.cwiseAbs().maxCoeff()) + ")");
    }
}

Space::Space(std::string name, OperatorSystem system, NullSpacePair pair, bool psi_in_null_P,
             QuadratureRule rule)
    : name_(std::move(name)),
      system_(std::move(system)),
      pair_(std::move(pair)),
      psi_in_null_P_(psi_in_null_P),
      rule_(std::move(rule)) {
    const auto n = static_cast<Eigen::Index>(pair_.size());
    psi_p_gram_.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        for (Eigen::Index l = 0; l <= k; ++l) {
            const double v = p_semi_inner(*this, pair_[static_cast<std::size_t>(k)].psi,
                                          pair_[static_cast<std::size_t>(l)].psi);
            psi_p_gram_(k, l) = v;
            psi_p_gram_(l, k) = v;
        }
    }
    if (psi_in_null_P_) {
        for (const NullSpaceEntry& e : pair_.entries()) {
            for (const Point& x : domain().interior_samples()) {
                for (std::size_t j = 0; j < P().size(); ++j) {
                    if (std::abs(P().apply_component(j, e.psi, x)) > 1e-10) {
                        throw InputError("space '" + name_ +
                                         "' claims psi in Null(P) but P psi != 0 at " +
                                         x.to_string());
                    }
                }
            }
        }
    }
}

Space Space::brownian_bridge() {
    auto sys = OperatorSystem::min_kernel();
    return Space("brownian_bridge", sys, NullSpacePair(), true);
}

Space Space::brownian_motion() {
    auto sys = OperatorSystem::min_kernel();
    NullSpacePair pair({{fn::coordinate(), 1.0}}, sys);
    return Space("brownian_motion", sys, std::move(pair), false);
}

Space Space::periodic() {
    auto sys = OperatorSystem::min_kernel();
    NullSpacePair pair({{fn::constant(std::sqrt(2.0) / 2.0), 1.0}}, sys);
    return Space("periodic", sys, std::move(pair), true);
}

Space Space::sobolev_homogeneous(double sigma) {
    auto sys = OperatorSystem::sobolev(sigma);
    return Space("sobolev_homogeneous", sys, NullSpacePair(), true);
}

Space Space::sobolev(double sigma) {
    auto sys = OperatorSystem::sobolev(sigma);
    // Multiplying numerator and denominator by e^{-σ} keeps every exponential ≤ 1 on [0,1].
    const Function decay = fn::shifted_exponential(-sigma, 0.0);   // e^{-σx}
    const Function growth = fn::shifted_exponential(sigma, 1.0);   // e^{σ(x-1)}
    const double em = -std::expm1(-sigma);                          // 1 - e^{-σ}
    const double ep = 1.0 + std::exp(-sigma);                       // 1 + e^{-σ}
    const Function psi1 = (1.0 / (std::sqrt(2.0) * em)) * (decay - growth);
    const Function psi2 = (1.0 / (std::sqrt(2.0) * ep)) * (decay + growth);
    const double a1 = em / (2.0 * sigma);
    const double a2 = ep / (2.0 * sigma);
    NullSpacePair pair({{psi1.renamed("psi1"), a1}, {psi2.renamed("psi2"), a2}}, sys);
    return Space("sobolev", sys, std::move(pair), false);
}

Space Space::thin_plate() {
    auto sys = OperatorSystem::thin_plate();
    const Function one = fn::constant(1.0, 2);
    const std::vector<Function> basis{one, fn::coordinate(0, 2) - 2.0 * one,
                                      fn::coordinate(1, 2) - 2.0 * one};
    const auto psis = orthonormalize(basis, sys.B, sys.domain);
    std::vector<NullSpaceEntry> entries;
    for (const Function& p : psis) {
        entries.push_back({p, 1.0});
    }
    NullSpacePair pair(std::move(entries), sys);
    return Space("thin_plate", sys, std::move(pair), true);
}

double p_semi_inner(const Space& space, const Function& f, const Function& g,
                    const std::vector<double>& splits) {
    const QuadratureRule rule = space.rule().with_splits(splits);
    const VectorDiffOperator& P = space.P();
    double sum = 0.0;
    for (std::size_t j = 0; j < P.size(); ++j) {
        sum += integrate_interior(
            [&](const Point& x) { return P.apply_component(j, f, x) * P.apply_component(j, g, x); },
            space.domain(), rule);
    }
    return sum;
}

double b_semi_inner(const VectorBoundaryOperator& B, const Domain& domain, const QuadratureRule& rule,
                    const Function& f, const Function& g) {
    double sum = 0.0;
    for (std::size_t j = 0; j < B.size(); ++j) {
        sum += integrate_boundary(
            [&](const Point& x) { return B.apply_component(j, f, x) * B.apply_component(j, g, x); },
            domain, rule);
    }
    return sum;
}

double b_semi_inner(const Space& space, const Function& f, const Function& g) {
    return b_semi_inner(space.B(), space.domain(), space.rule(), f, g);
}

Eigen::VectorXd fourier_coeffs(const Space& space, const Function& f) {
    const auto n = static_cast<Eigen::Index>(space.pair().size());
    Eigen::VectorXd out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out(k) = b_semi_inner(space, f, space.pair()[static_cast<std::size_t>(k)].psi);
    }
    return out;
}

double hpb_inner(const Space& space, const Function& f, const Function& g,
                 const std::vector<double>& splits) {
    double value = p_semi_inner(space, f, g, splits);
    if (space.pair().empty()) {
        return value;
    }
    const Eigen::VectorXd fh = fourier_coeffs(space, f);
    const Eigen::VectorXd gh = fourier_coeffs(space, g);
    for (std::size_t k = 0; k < space.pair().size(); ++k) {
        const auto i = static_cast<Eigen::Index>(k);
        value += fh(i) * gh(i) / space.pair()[k].weight;
    }
    if (!space.psi_in_null_P()) {
        value -= fh.dot(space.psi_p_gram() * gh);
    }
    return value;
}

Eigen::MatrixXd b_gram(const std::vector<Function>& fs, const VectorBoundaryOperator& B,
                       const Domain& domain, const QuadratureRule& rule) {
    const auto n = static_cast<Eigen::Index>(fs.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double v = b_semi_inner(B, domain, rule, fs[static_cast<std::size_t>(i)],
                                          fs[static_cast<std::size_t>(j)]);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

std::vector<Function> orthonormalize(const std::vector<Function>& basis,
                                     const VectorBoundaryOperator& B, const Domain& domain,
                                     const QuadratureRule& rule) {
    std::vector<Function> out;
    out.reserve(basis.size());
    const std::vector<Point> samples = domain.boundary_samples();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Function v = basis[i];
        for (const Function& q : out) {
            const double c = b_semi_inner(B, domain, rule, v, q);
            v = v - c * q;
        }
        const double norm = std::sqrt(std::max(0.0, b_semi_inner(B, domain, rule, v, v)));
        if (norm < kDegenerate) {
            throw DegeneracyError(i, norm);
        }
        double sign = 1.0;
        for (const Point& x : samples) {
            const double value = v(x);
            if (std::abs(value / norm) > kSignTol) {
                sign = value > 0.0 ? 1.0 : -1.0;
                break;
            }
        }
        out.push_back((sign / norm) * v);
    }
    return out;
}

Decomposition decompose(const Function& f, const std::vector<Function>& null_basis,
                        const VectorBoundaryOperator& B, const Domain& domain,
                        const QuadratureRule& rule) {
    const std::vector<Function> q = orthonormalize(null_basis, B, domain, rule);
    Function fb(f.dim());
    Eigen::VectorXd coeffs(static_cast<Eigen::Index>(q.size()));
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double c = b_semi_inner(B, domain, rule, f, q[k]);
        coeffs(static_cast<Eigen::Index>(k)) = c;
        fb = fb + c * q[k];
    }
    const Function fp = f - fb;

    double residual = 0.0;
    double scale = 1.0;
    for (const Point& x : domain.boundary_samples()) {
        for (std::size_t j = 0; j < B.size(); ++j) {
            residual = std::max(residual, std::abs(B.apply_component(j, fp, x)));
            scale = std::max(scale, std::abs(B.apply_component(j, f, x)));
        }
    }
    if (residual > kDecomposeTol * scale) {
        throw DecompositionError("boundary trace of f_P does not vanish (residual " +
                                 std::to_string(residual) +
                                 "); the supplied basis does not span Null(L)");
    }
    return {fp.renamed("f_P"), fb.renamed("f_B"), coeffs, residual};
}

BoundaryKernel::BoundaryKernel(std::size_t component, const Space& space)
    : component_(component), B_(space.B()), domain_(space.domain()), entries_(space.pair().entries()) {
    if (component >= B_.size()) {
        throw InputError("boundary component index out of range");
    }
}

double BoundaryKernel::operator()(const Point& x, const Point& y) const {
    if (!domain_.on_boundary(x) || !domain_.on_boundary(y)) {
        throw DomainError("boundary kernel evaluated off the boundary");
    }
    double sum = 0.0;
    for (const NullSpaceEntry& e : entries_) {
        sum += e.weight * B_.apply_component(component_, e.psi, x) *
               B_.apply_component(component_, e.psi, y);
    }
    return sum;
}

Eigen::MatrixXd BoundaryKernel::gram(const std::vector<Point>& boundary_points) const {
    const auto n = static_cast<Eigen::Index>(boundary_points.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = (*this)(boundary_points[static_cast<std::size_t>(i)],
                              boundary_points[static_cast<std::size_t>(j)]);
        }
    }
    return g;
}

std::vector<BoundaryKernel> membership_kernels(const Space& space) {
    std::vector<BoundaryKernel> out;
    for (std::size_t j = 0; j < space.B().size(); ++j) {
        out.emplace_back(j, space);
    }
    return out;
}

MembershipReport membership(const Space& space, const Function& f,
                            const std::vector<Function>& full_null_basis) {
    MembershipReport report{};
    const Decomposition d = decompose(f, full_null_basis, space.B(), space.domain(), space.rule());
    report.decomposition_residual = d.boundary_residual;
    report.fourier = fourier_coeffs(space, f);

    Function projected(f.dim());
    for (std::size_t k = 0; k < space.pair().size(); ++k) {
        projected = projected + report.fourier(static_cast<Eigen::Index>(k)) * space.pair()[k].psi;
    }
    const Function rest = f - projected;
    report.projection_residual = std::sqrt(std::max(0.0, b_semi_inner(space, rest, rest)));
    const double scale = 1.0 + std::sqrt(std::max(0.0, b_semi_inner(space, f, f)));
    report.member = report.projection_residual <= 1e-9 * scale;
    report.norm_squared =
        report.member ? hpb_inner(space, f, f) : std::numeric_limits<double>::quiet_NaN();

    const std::vector<Point> samples = space.domain().boundary_samples();
    for (const BoundaryKernel& psi : membership_kernels(space)) {
        const Eigen::MatrixXd g = psi.gram(samples);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
        report.psi_min_eigenvalues.push_back(es.eigenvalues().minCoeff());
    }
    return report;
}

}  // namespace greenkernel
