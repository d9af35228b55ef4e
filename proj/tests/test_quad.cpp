#include <cmath>
#include <limits>
#include <numeric>

#include <gtest/gtest.h>

#include "greenkernel/errors.hpp"
#include "greenkernel/quadrature.hpp"

using namespace greenkernel;

TEST(QuadratureRule, ReferenceWeightsArePositiveAndSumToOne) {
    const QuadratureRule rule;
    EXPECT_EQ(rule.nodes(), 32);
    EXPECT_EQ(rule.panels(), 4);
    const auto& w = rule.reference_weights();
    for (double wi : w) {
        EXPECT_GT(wi, 0.0);
    }
    for (double xi : rule.reference_nodes()) {
        EXPECT_GT(xi, 0.0);
        EXPECT_LT(xi, 1.0);
    }
    EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-14);
}

TEST(QuadratureRule, SplitsOutsideDomainAreRejected) {
    const QuadratureRule rule = QuadratureRule().with_split(1.5);
    EXPECT_THROW(integrate_interior([](const Point&) { return 1.0; }, Domain::unit_interval(), rule),
                 DomainError);
}

TEST(IntegrateInterior, Examples) {
    const QuadratureRule rule;
    EXPECT_NEAR(integrate_interior([](const Point& p) { return p.x() * p.x(); }, Domain::unit_interval(), rule),
                1.0 / 3.0, 1e-14);
    EXPECT_NEAR(integrate_interior([](const Point& p) { return std::abs(p.x() - 0.5); },
                                   Domain::unit_interval(), rule.with_split(0.5)),
                0.25, 1e-14);
    EXPECT_NEAR(integrate_interior([](const Point& p) { return p[0] * p[1]; }, Domain::unit_square(), rule),
                0.25, 1e-13);
}

TEST(IntegrateInterior, NonFiniteValueReportsNode) {
    try {
        (void)integrate_interior([](const Point&) { return std::numeric_limits<double>::quiet_NaN(); },
                                 Domain::unit_interval(), QuadratureRule());
        FAIL() << "expected IntegrandError";
    } catch (const IntegrandError& e) {
        EXPECT_TRUE(Domain::unit_interval().is_interior(e.where()));
    }
}

TEST(IntegrateInterior, DoublingPanelsPlateaus) {
    const QuadratureRule rule;
    auto f = [](const Point& p) { return std::exp(std::sin(3 * p.x())) * std::cos(p.x()); };
    const double a = integrate_interior(f, Domain::unit_interval(), rule);
    const double b = integrate_interior(f, Domain::unit_interval(), rule.with_panels(8));
    EXPECT_LE(std::abs(a - b), 1e-12);
    auto g = [](const Point& p) { return std::cos(p[0] * p[1]) + p[0] * p[0] * p[1]; };
    EXPECT_LE(std::abs(integrate_interior(g, Domain::unit_square(), rule) -
                       integrate_interior(g, Domain::unit_square(), rule.with_panels(8))),
              1e-12);
}

TEST(IntegrateInterior, ArtificialSplitIsHarmless) {
    auto f = [](const Point& p) { return std::sin(2 * p.x()) + p.x() * p.x() * p.x(); };
    const QuadratureRule rule;
    const double a = integrate_interior(f, Domain::unit_interval(), rule);
    for (double s : {0.123, 0.5, 0.77}) {
        EXPECT_LE(std::abs(a - integrate_interior(f, Domain::unit_interval(), rule.with_split(s))), 1e-13);
    }
}

TEST(IntegrateInterior, SplitsOnEndpointsAreIgnored) {
    auto f = [](const Point& p) { return p.x(); };
    const QuadratureRule rule = QuadratureRule().with_splits({0.0, 1.0});
    EXPECT_NEAR(integrate_interior(f, Domain::unit_interval(), rule), 0.5, 1e-15);
}

TEST(IntegrateBoundary, Examples) {
    const QuadratureRule rule;
    EXPECT_EQ(integrate_boundary([](const Point& p) { return p.x(); }, Domain::unit_interval(), rule), 1.0);
    EXPECT_NEAR(integrate_boundary([](const Point&) { return 1.0; }, Domain::unit_square(), rule), 4.0, 1e-14);
    EXPECT_NEAR(integrate_boundary([](const Point& p) { return p[0]; }, Domain::unit_square(), rule), 2.0,
                1e-14);
}

TEST(IntegrateBoundary, ZeroOnBoundaryIsExactlyZero) {
    auto f = [](const Point& p) { return p[0] * (1 - p[0]) * p[1] * (1 - p[1]); };
    EXPECT_EQ(integrate_boundary(f, Domain::unit_square(), QuadratureRule()), 0.0);
    auto g = [](const Point& p) { return std::sin(3.0 * p.x()) * p.x() * (1 - p.x()); };
    EXPECT_EQ(integrate_boundary(g, Domain::unit_interval(), QuadratureRule()), 0.0);
}

TEST(IntegrateBoundary, RectangleUsesArcLength) {
    const Domain d = Domain::rectangle({0.0, 2.0}, {-1.0, 0.5});
    EXPECT_NEAR(integrate_boundary([](const Point&) { return 1.0; }, d, QuadratureRule()), 7.0, 1e-13);
}
