#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "greenkernel/errors.hpp"
#include "greenkernel/hilbert.hpp"
#include "greenkernel/kernels.hpp"
#include "greenkernel/spectral.hpp"

using namespace greenkernel;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(DirichletEigenpairs, Examples) {
    const auto p0 = dirichlet_eigenpairs(0.0, 3);
    EXPECT_NEAR(p0[0].operator_eigenvalue, kPi * kPi, 1e-14);
    EXPECT_NEAR(p0[0].eigenfunction(0.5), std::sqrt(2.0), 1e-15);
    const auto p2 = dirichlet_eigenpairs(2.0, 3);
    EXPECT_NEAR(p2[2].operator_eigenvalue, 9 * kPi * kPi + 4, 1e-13);
    EXPECT_THROW(dirichlet_eigenpairs(1.0, 0), InputError);
}

TEST(DirichletEigenpairs, NormalizedAndSatisfyTheOperatorEquation) {
    for (double sigma : {0.0, 1.0, 2.0}) {
        const CatalogOperatorL L = sigma > 0 ? CatalogOperatorL::neg_second_plus_sigma2(sigma)
                                             : CatalogOperatorL::neg_second_derivative();
        for (const EigenPair& e : dirichlet_eigenpairs(sigma, 10)) {
            const double norm2 = integrate_interior(
                [&](const Point& x) { return e.eigenfunction(x) * e.eigenfunction(x); }, Domain::unit_interval(),
                QuadratureRule());
            EXPECT_NEAR(norm2, 1.0, 1e-13);
            EXPECT_NEAR(e.eigenfunction(0.0), 0.0, 1e-15);
            EXPECT_NEAR(e.eigenfunction(1.0), 0.0, 1e-13);
            for (double x : {0.13, 0.5, 0.77}) {
                EXPECT_NEAR(apply_L(L, e.eigenfunction, x, Domain::unit_interval()),
                            e.operator_eigenvalue * e.eigenfunction(x), 1e-9);
            }
        }
    }
}

TEST(MixedEigenpairs, Examples) {
    const auto pairs = mixed_eigenpairs_brownian(5);
    EXPECT_NEAR(pairs[0].kernel_eigenvalue(), 4.0 / (kPi * kPi), 1e-15);
    for (const EigenPair& e : pairs) {
        EXPECT_EQ(e.eigenfunction(0.0), 0.0);
    }
    EXPECT_NEAR(pairs[0].eigenfunction(1.0), std::sqrt(2.0), 1e-15);
    // Boundary value at 1 matches η computed from Γ(x,y) = x·y by quadrature.
    const Space bm = Space::brownian_motion();
    EXPECT_NEAR(boundary_eta(bm, pairs[0], 0, 1.0), pairs[0].eigenfunction(1.0), 1e-12);
    EXPECT_NEAR(boundary_eta(bm, pairs[0], 0, 0.0), 0.0, 1e-15);
}

TEST(IntegralOperator, Examples) {
    const auto dp = dirichlet_eigenpairs(0.0, 1);
    const Function image = apply_integral_operator(catalog::brownian_bridge(), dp[0].eigenfunction);
    double worst = 0.0;
    for (int i = 0; i <= 20; ++i) {
        const double y = i / 20.0;
        worst = std::max(worst, std::abs(image(y) - dp[0].eigenfunction(y) / (kPi * kPi)));
    }
    EXPECT_LE(worst, 1e-9);

    const Function zero = apply_integral_operator(catalog::brownian_bridge(), fn::zero());
    EXPECT_EQ(zero(0.4), 0.0);

    const auto mp = mixed_eigenpairs_brownian(1);
    const Function im = apply_integral_operator(catalog::brownian_motion(), mp[0].eigenfunction);
    for (int i = 0; i <= 20; ++i) {
        const double y = i / 20.0;
        EXPECT_NEAR(im(y), mp[0].kernel_eigenvalue() * mp[0].eigenfunction(y), 1e-8);
    }
}

TEST(IntegralOperator, SecondDerivativeOfKinkedKernelIsUnsupported) {
    const Function image = apply_integral_operator(catalog::brownian_bridge(), fn::constant(1.0));
    EXPECT_NO_THROW((void)image.derivative(1, 0.3));
    EXPECT_THROW((void)image.derivative(2, 0.3), UnsupportedFunctionError);
}

TEST(MercerEval, Examples) {
    const auto pairs = dirichlet_eigenpairs(0.0, 10);
    EXPECT_NEAR(mercer_eval(pairs, 3, 0.5, 0.5), 20.0 / (9 * kPi * kPi), 1e-15);
    EXPECT_EQ(mercer_eval(pairs, 0, 0.5, 0.5), 0.0);
    EXPECT_THROW(mercer_eval(pairs, 11, 0.5, 0.5), InputError);
}

TEST(MercerEval, MonotoneOnDiagonalAndSymmetric) {
    const auto pairs = dirichlet_eigenpairs(0.0, 40);
    for (double x : {0.05, 0.3, 0.5, 0.81}) {
        double prev = 0.0;
        for (int n = 1; n <= 40; ++n) {
            const double s = mercer_eval(pairs, n, x, x);
            EXPECT_GE(s, prev);
            prev = s;
        }
        EXPECT_EQ(mercer_eval(pairs, 40, x, 0.42), mercer_eval(pairs, 40, 0.42, x));
    }
}

TEST(MercerEval, LongSeriesApproachesBridge) {
    const auto pairs = dirichlet_eigenpairs(0.0, 10000);
    EXPECT_LE(mercer_sup_error(pairs, 10000, catalog::brownian_bridge(), 21), 1e-4);
}

TEST(OnbCheck, Examples) {
    const auto bridge = dirichlet_eigenpairs(0.0, 5);
    EXPECT_LE(onb_check(Space::brownian_bridge(), bridge, 5), 1e-8);
    const auto mixed = mixed_eigenpairs_brownian(5);
    EXPECT_LE(onb_check(Space::brownian_motion(), mixed, 5), 1e-8);
    EXPECT_LE(onb_check(Space::brownian_bridge(), bridge, 1), 1e-9);
    const auto sob = dirichlet_eigenpairs(1.0, 5);
    EXPECT_LE(onb_check(Space::sobolev_homogeneous(1.0), sob, 5), 1e-8);
}

TEST(Transfer, BridgeSobolevAndMixedFamilies) {
    const auto bridge = dirichlet_eigenpairs(0.0, 10);
    const auto sob = dirichlet_eigenpairs(1.0, 10);
    const auto mixed = mixed_eigenpairs_brownian(10);
    const Space bb = Space::brownian_bridge();
    const Space sh = Space::sobolev_homogeneous(1.0);
    const Space bm = Space::brownian_motion();
    for (int p = 0; p < 10; ++p) {
        for (const auto& [space, k, pair] :
             {std::tuple{&bb, catalog::brownian_bridge(), &bridge[static_cast<std::size_t>(p)]},
              std::tuple{&sh, catalog::sobolev_green(1.0), &sob[static_cast<std::size_t>(p)]},
              std::tuple{&bm, catalog::brownian_motion(), &mixed[static_cast<std::size_t>(p)]}}) {
            const TransferResiduals r = transfer_residuals(*space, k, *pair);
            EXPECT_LE(r.kernel_side, 1e-6) << k.name() << " p=" << p + 1;
            EXPECT_LE(r.operator_side, 1e-6) << k.name() << " p=" << p + 1;
            EXPECT_LE(r.boundary, 1e-9) << k.name() << " p=" << p + 1;
        }
    }
}
