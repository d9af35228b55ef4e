#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "greenkernel/errors.hpp"
#include "greenkernel/hilbert.hpp"

using namespace greenkernel;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

Function random_poly(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c(static_cast<std::size_t>(degree + 1));
    for (double& v : c) {
        v = u(rng);
    }
    return fn::polynomial(c);
}

double max_dev_from_identity(const Eigen::MatrixXd& g) {
    return (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

// ±1 aligned so that f ≈ s·g; compares up to sign.
double sup_diff_up_to_sign(const Function& f, const Function& g) {
    double plus = 0.0;
    double minus = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double x = i / 20.0;
        plus = std::max(plus, std::abs(f(x) - g(x)));
        minus = std::max(minus, std::abs(f(x) + g(x)));
    }
    return std::min(plus, minus);
}

}  // namespace

TEST(NullSpacePair, ValidatesConstruction) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    EXPECT_THROW(NullSpacePair({{fn::coordinate(), 0.0}}, sys), InputError);
    EXPECT_THROW(NullSpacePair({{fn::polynomial({0, 0, 1}), 1.0}}, sys), InputError);  // L x² ≠ 0
    EXPECT_THROW(NullSpacePair({{fn::constant(1.0), 1.0}}, sys), InputError);          // B-norm² = 2
    EXPECT_NO_THROW(NullSpacePair({{fn::coordinate(), 1.0}, {fn::polynomial({1, -1}), 2.0}}, sys));
}

TEST(Space, NullPFlagIsChecked) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    NullSpacePair pair({{fn::coordinate(), 1.0}}, sys);
    EXPECT_THROW(Space("bad", sys, pair, true), InputError);
}

TEST(PSemiInner, Examples) {
    const Space bb = Space::brownian_bridge();
    EXPECT_NEAR(p_semi_inner(bb, fn::coordinate(), fn::coordinate()), 1.0, 1e-14);
    EXPECT_NEAR(p_semi_inner(bb, fn::sine(kPi), fn::coordinate()), 0.0, 1e-14);
    const Space s2 = Space::sobolev_homogeneous(2.0);
    EXPECT_NEAR(p_semi_inner(s2, fn::constant(1.0), fn::constant(1.0)), 4.0, 1e-14);
}

TEST(BSemiInner, Examples) {
    const Space bb = Space::brownian_bridge();
    EXPECT_EQ(b_semi_inner(bb, fn::coordinate(), fn::polynomial({1, -1})), 0.0);
    EXPECT_EQ(b_semi_inner(bb, fn::constant(1.0), fn::constant(1.0)), 2.0);
    const Space sob = Space::sobolev(1.0);
    std::vector<Function> psis;
    for (const auto& e : sob.pair().entries()) {
        psis.push_back(e.psi);
    }
    EXPECT_LE(max_dev_from_identity(b_gram(psis, sob.B(), sob.domain())), 1e-12);
}

TEST(HpbInner, Examples) {
    EXPECT_NEAR(hpb_inner(Space::brownian_motion(), fn::coordinate(), fn::coordinate()), 1.0, 1e-14);
    EXPECT_NEAR(hpb_inner(Space::periodic(), fn::constant(1.0), fn::constant(1.0)), 2.0, 1e-14);
}

TEST(HpbInner, SobolevConstantUsesWeightedBoundaryTerm) {
    // ‖1‖² = σ²·1 + Σ f̂_k²/a_k - cross term; with the pair's a_k this equals
    // σ + σ(f(0)² + f(1)²) = 3 for σ = 1, the norm for which exp(-σ|x-y|)/(2σ)
    // reproduces (see SobolevNormReproduces below).
    EXPECT_NEAR(hpb_inner(Space::sobolev(1.0), fn::constant(1.0), fn::constant(1.0)), 3.0, 1e-12);
}

TEST(HpbInner, SobolevNormMatchesClosedForm) {
    // (f,g) = ∫ f'g' + σ² fg + σ (f(0)g(0) + f(1)g(1)).
    std::mt19937 rng(3);
    for (double sigma : {0.5, 1.0, 3.0}) {
        const Space s = Space::sobolev(sigma);
        for (int i = 0; i < 5; ++i) {
            const Function f = random_poly(rng, 3) + fn::sine(2.0);
            const Function g = random_poly(rng, 4);
            const double direct = integrate_interior(
                [&](const Point& x) { return f.derivative(1, x) * g.derivative(1, x) + sigma * sigma * f(x) * g(x); },
                s.domain(), s.rule()) + sigma * (f(0.0) * g(0.0) + f(1.0) * g(1.0));
            EXPECT_NEAR(hpb_inner(s, f, g), direct, 1e-11 * (1 + std::abs(direct)));
        }
    }
}

TEST(HpbInner, BrownianMotionReducesToDerivativeProduct) {
    std::mt19937 rng(5);
    const Space bm = Space::brownian_motion();
    for (int i = 0; i < 10; ++i) {
        // f(0) = g(0) = 0: drop the constant term.
        const Function f = random_poly(rng, 4) * fn::coordinate();
        const Function g = random_poly(rng, 3) * fn::coordinate();
        const double direct = integrate_interior(
            [&](const Point& x) { return f.derivative(1, x) * g.derivative(1, x); }, bm.domain(), bm.rule());
        EXPECT_NEAR(hpb_inner(bm, f, g), direct, 1e-10);
    }
}

TEST(InnerProducts, SymmetricAndBilinear) {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (const Space& s : {Space::brownian_motion(), Space::periodic(), Space::sobolev(1.5)}) {
        for (int i = 0; i < 5; ++i) {
            const Function f = random_poly(rng, 3) + fn::sine(u(rng));
            const Function g = random_poly(rng, 4);
            const Function h = fn::cosine(u(rng)) + random_poly(rng, 2);
            const double a = u(rng);
            const double b = u(rng);
            auto check = [&](auto inner) {
                const double fg = inner(f, g);
                EXPECT_NEAR(fg, inner(g, f), 1e-11 * (1 + std::abs(fg)));
                const double lhs = inner(a * f + b * h, g);
                const double rhs = a * fg + b * inner(h, g);
                EXPECT_NEAR(lhs, rhs, 1e-11 * (1 + std::abs(lhs)));
            };
            check([&](const Function& x, const Function& y) { return p_semi_inner(s, x, y); });
            check([&](const Function& x, const Function& y) { return b_semi_inner(s, x, y); });
            check([&](const Function& x, const Function& y) { return hpb_inner(s, x, y); });
        }
    }
}

TEST(PSemiInner, PositiveOnFunctionsVanishingAtBoundary) {
    std::mt19937 rng(13);
    const Space bb = Space::brownian_bridge();
    const Space sob = Space::sobolev_homogeneous(1.0);
    const Space tp = Space::thin_plate();
    const Function bump = fn::polynomial({0, 1, -1});
    const Function bump2 = fn::polynomial({0, 0, 1, -2, 1}, 0, 2) * fn::polynomial({0, 0, 1, -2, 1}, 1, 2);
    for (int i = 0; i < 10; ++i) {
        const Function f = bump * (random_poly(rng, 2) + fn::constant(3.0));
        EXPECT_GT(p_semi_inner(bb, f, f), 0.0);
        EXPECT_GT(p_semi_inner(sob, f, f), 0.0);
    }
    EXPECT_GT(p_semi_inner(tp, bump2, bump2), 0.0);
}

TEST(Orthonormalize, CatalogNullBases) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    const auto q = orthonormalize({fn::constant(1.0), fn::coordinate()}, sys.B, sys.domain);
    EXPECT_LE(sup_diff_up_to_sign(q[0], fn::constant(kSqrt2 / 2)), 1e-12);
    EXPECT_LE(sup_diff_up_to_sign(q[1], fn::polynomial({-kSqrt2 / 2, kSqrt2})), 1e-12);

    const auto same = orthonormalize({fn::coordinate(), fn::polynomial({1, -1})}, sys.B, sys.domain);
    EXPECT_LE(sup_diff_up_to_sign(same[0], fn::coordinate()), 1e-15);
    EXPECT_LE(sup_diff_up_to_sign(same[1], fn::polynomial({1, -1})), 1e-15);

    const Space sob = Space::sobolev(1.0);
    const auto qs = orthonormalize({sob.pair()[0].psi, sob.pair()[1].psi}, sob.B(), sob.domain());
    EXPECT_LE(sup_diff_up_to_sign(qs[0], sob.pair()[0].psi), 1e-12);
    EXPECT_LE(sup_diff_up_to_sign(qs[1], sob.pair()[1].psi), 1e-12);
}

TEST(Orthonormalize, FirstBoundarySampleIsPositive) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    const auto q = orthonormalize({fn::constant(-3.0), fn::coordinate()}, sys.B, sys.domain);
    EXPECT_GT(q[0](0.0), 0.0);
    // x - 1/2 vanishes nowhere on {0,1}; its value at 0 is negative, so it flips.
    EXPECT_GT(q[1](0.0), 0.0);
}

TEST(Orthonormalize, InvariantUnderPositiveRescaling) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    const std::vector<Function> basis{fn::polynomial({0.3, 1.0}), fn::polynomial({2.0, -0.5})};
    const auto a = orthonormalize(basis, sys.B, sys.domain);
    const auto b = orthonormalize({7.5 * basis[0], 0.02 * basis[1]}, sys.B, sys.domain);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (double x : {0.0, 0.3, 1.0}) {
            EXPECT_NEAR(a[i](x), b[i](x), 1e-10);
        }
    }
}

TEST(Orthonormalize, DegenerateCandidateNamesIndex) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    try {
        (void)orthonormalize({fn::coordinate(), fn::constant(1.0), fn::polynomial({2, 3})}, sys.B, sys.domain);
        FAIL() << "expected DegeneracyError";
    } catch (const DegeneracyError& e) {
        EXPECT_EQ(e.index(), 2u);
    }
}

TEST(Orthonormalize, ThinPlateBasisReport) {
    const OperatorSystem sys = OperatorSystem::thin_plate();
    const Function one = fn::constant(1.0, 2);
    const double c = std::sqrt(3.0 / 29.0);
    const std::vector<Function> quoted{0.5 * one, c * (fn::coordinate(0, 2) - 2.0 * one),
                                       c * (fn::coordinate(1, 2) - 2.0 * one)};
    const Eigen::MatrixXd g = b_gram(quoted, sys.B, sys.domain);
    // Under the full boundary product the quoted set is not orthonormal:
    // (ψ2,ψ2) = 41/29 and (ψ1,ψ2) = c·(-6)/2.
    EXPECT_NEAR(g(0, 0), 1.0, 1e-13);
    EXPECT_NEAR(g(1, 1), 41.0 / 29.0, 1e-12);
    EXPECT_NEAR(g(0, 1), -3.0 * c, 1e-12);
    EXPECT_NEAR(g(0, 2), -3.0 * c, 1e-12);

    const Space tp = Space::thin_plate();
    std::vector<Function> psis;
    for (const auto& e : tp.pair().entries()) {
        psis.push_back(e.psi);
    }
    EXPECT_LE(max_dev_from_identity(b_gram(psis, sys.B, sys.domain)), 1e-12);
    EXPECT_NEAR(psis[0](Point(0.3, 0.8)), 0.5, 1e-14);
}

TEST(FourierCoeffs, Examples) {
    const Function f = fn::sine(1.3) + fn::polynomial({0.4, 0.0, 2.0});
    const Eigen::VectorXd bm = fourier_coeffs(Space::brownian_motion(), f);
    ASSERT_EQ(bm.size(), 1);
    EXPECT_NEAR(bm(0), f(1.0), 1e-15);

    const Eigen::VectorXd sob = fourier_coeffs(Space::sobolev(1.0), f);
    EXPECT_NEAR(sob(0), (f(0.0) - f(1.0)) / kSqrt2, 1e-14);
    EXPECT_NEAR(sob(1), (f(0.0) + f(1.0)) / kSqrt2, 1e-14);

    EXPECT_TRUE(fourier_coeffs(Space::sobolev(2.0), fn::zero()).isZero(0.0));
}

TEST(Decompose, Examples) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    const std::vector<Function> basis{fn::coordinate(), fn::polynomial({1, -1})};
    const auto d = decompose(fn::sine(kPi) + fn::coordinate(), basis, sys.B, sys.domain);
    for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        EXPECT_NEAR(d.boundary_part(x), x, 1e-14);
        EXPECT_NEAR(d.interior_part(x), std::sin(kPi * x), 1e-14);
    }
    const auto d2 = decompose(fn::polynomial({0, 1, -1}), basis, sys.B, sys.domain);
    EXPECT_NEAR(d2.boundary_part(0.4), 0.0, 1e-15);
    const auto d3 = decompose(fn::constant(1.0), basis, sys.B, sys.domain);
    EXPECT_NEAR(d3.boundary_part(0.4), 1.0, 1e-15);
    EXPECT_NEAR(d3.interior_part(0.4), 0.0, 1e-15);
}

TEST(Decompose, NonSpanningBasisFails) {
    const OperatorSystem sys = OperatorSystem::min_kernel();
    EXPECT_THROW(decompose(fn::coordinate(), {fn::constant(1.0)}, sys.B, sys.domain), DecompositionError);
}

TEST(MembershipKernels, Examples) {
    const auto bm = membership_kernels(Space::brownian_motion());
    ASSERT_EQ(bm.size(), 1u);
    EXPECT_EQ(bm[0](1.0, 1.0), 1.0);
    EXPECT_EQ(bm[0](0.0, 1.0), 0.0);

    for (double sigma : {0.5, 1.0, 4.0}) {
        const auto sob = membership_kernels(Space::sobolev(sigma));
        EXPECT_NEAR(sob[0](0.0, 0.0), 1.0 / (2 * sigma), 1e-14);
    }

    const auto empty = membership_kernels(Space::brownian_bridge());
    EXPECT_EQ(empty[0](0.0, 1.0), 0.0);
    EXPECT_EQ(empty[0](1.0, 1.0), 0.0);
    EXPECT_THROW((void)bm[0](0.5, 1.0), DomainError);
}

TEST(MembershipKernels, PositiveSemiDefiniteOnBoundarySamples) {
    for (const Space& s : {Space::brownian_motion(), Space::periodic(), Space::sobolev(1.0), Space::thin_plate()}) {
        for (const BoundaryKernel& psi : membership_kernels(s)) {
            const Eigen::MatrixXd g = psi.gram(s.domain().boundary_samples(3));
            EXPECT_LE((g - g.transpose()).cwiseAbs().maxCoeff(), 0.0);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12) << s.name();
        }
    }
}

TEST(Membership, BrownianMotionRequiresZeroAtOrigin) {
    const Space bm = Space::brownian_motion();
    const std::vector<Function> basis{fn::constant(1.0), fn::coordinate()};
    const auto in = membership(bm, fn::sine(kPi / 2), basis);
    EXPECT_TRUE(in.member);
    EXPECT_NEAR(in.norm_squared, kPi * kPi / 8, 1e-12);
    const auto out = membership(bm, fn::polynomial({1, 1}), basis);
    EXPECT_FALSE(out.member);
    EXPECT_TRUE(std::isnan(out.norm_squared));
}
