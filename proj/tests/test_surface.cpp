#include <gtest/gtest.h>

#include <chrono>

#include "geocoder/surface.hpp"

using namespace geocoder;

class SurfaceByGenus : public ::testing::TestWithParam<int> {};

TEST_P(SurfaceByGenus, RelationsHold) {
    auto t0 = std::chrono::steady_clock::now();
    Surface s = Surface::build(GetParam());
    RelationReport r = relation_report(s);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(r.max(), 1e-8);
    EXPECT_LT(dt, 1.0);
}

TEST_P(SurfaceByGenus, RegularRightAngledPolygon) {
    const int g = GetParam();
    Surface s = Surface::build(g);
    EXPECT_EQ(s.n(), 8 * g - 4);
    // cosh R = cot(pi/n) cot(alpha/2) with alpha = pi/2.
    double R = std::acosh(1.0 / std::tan(pi / s.n()));
    double r = std::tanh(R / 2);
    for (int k = 1; k <= s.n(); ++k) {
        EXPECT_NEAR(std::abs(s.V(k)), r, 1e-12);
        Circle c = isometric_circle(s.T(k));
        // Orthogonal to the unit circle, through V_k and V_{k+1}.
        EXPECT_NEAR(std::norm(c.center), 1 + c.radius * c.radius, 1e-10);
        EXPECT_NEAR(std::abs(s.V(k) - c.center), c.radius, 1e-10);
        EXPECT_NEAR(std::abs(s.V(k + 1) - c.center), c.radius, 1e-10);
        // P_k and Q_{k+1} are its endpoints, M_k is the direction of V_k.
        EXPECT_NEAR(std::abs(std::polar(1.0, s.P(k)) - c.center), c.radius, 1e-10);
        EXPECT_NEAR(std::abs(std::polar(1.0, s.Q(k + 1)) - c.center), c.radius, 1e-10);
        EXPECT_LT(angular_distance(std::arg(s.V(k)), s.M(k)), 1e-12);
    }
}

TEST_P(SurfaceByGenus, IndexMaps) {
    const int g = GetParam();
    Surface s = Surface::build(g);
    for (int i = 1; i <= s.n(); ++i) {
        int expect = i % 2 ? 4 * g - i : 2 - i;
        EXPECT_EQ(s.sigma(i), s.wrap_index(expect));
        EXPECT_EQ(s.sigma(s.sigma(i)), i);
        EXPECT_EQ(s.rho(i), s.wrap_index(s.sigma(i) + 1));
        EXPECT_EQ(s.theta(i), s.wrap_index(s.sigma(i) - 1));
        EXPECT_EQ(s.tau(s.tau(i)), i);
        EXPECT_EQ(index_map(s, 's', i), s.sigma(i));
        // Side pairing and the corner product, checked without relation_report.
        EXPECT_TRUE(projectively_equal(compose(s.T(s.sigma(i)), s.T(i)), Mobius::identity(), 1e-9));
        EXPECT_TRUE(projectively_equal(s.U(i), word_product(s, {s.sigma(i), s.tau(i - 1)}), 1e-9));
        EXPECT_LT(angular_distance(apply(s.T(i), s.P(i)), s.Q(s.sigma(i) + 1)), 1e-9);
        EXPECT_LT(angular_distance(apply(s.T(i), s.Q(i + 1)), s.P(s.sigma(i))), 1e-9);
    }
    EXPECT_THROW(index_map(s, 's', 0), Error);
    EXPECT_THROW(index_map(s, 's', s.n() + 1), Error);
    EXPECT_THROW(index_map(s, 'x', 1), Error);
}

INSTANTIATE_TEST_SUITE_P(Genus, SurfaceByGenus, ::testing::Values(2, 3, 4, 5));

TEST(Surface, GenusTwoSigma) {
    Surface s = Surface::build(2);
    EXPECT_EQ(s.sigma(1), 7);
    EXPECT_EQ(s.sigma(2), 12);
    EXPECT_EQ(s.tau(1), 7);
}

TEST(Surface, RejectsLowGenus) {
    EXPECT_THROW(Surface::build(1), Error);
    EXPECT_THROW(Surface::build(0), Error);
}

TEST(Surface, CornerTenFixesMidpoints) {
    Surface s = Surface::build(2);
    FixedPointPair f = fixed_points(s.U(10));
    double a = std::min(angular_distance(f.repelling, s.M(4)) + angular_distance(f.attracting, s.M(10)),
                        angular_distance(f.repelling, s.M(10)) + angular_distance(f.attracting, s.M(4)));
    EXPECT_LT(a, 1e-8);
}

TEST(Surface, CrossingThroughOrigin) {
    Surface s = Surface::build(2);
    // The diameter from M_7 to M_1 passes through the centre, entering at vertex-adjacent sides.
    Geodesic g{s.M(7) + 0.01, s.M(1) + 0.01};
    Crossing c = s.cross(g);
    ASSERT_TRUE(c.hit);
    EXPECT_EQ(c.exit_side, 1);
    EXPECT_EQ(exit_side(s, g), 1);
    EXPECT_EQ(entry_side(s, g), 7);
    // A geodesic hugging the boundary misses F.
    EXPECT_FALSE(meets_polygon(s, {0.1, 0.2}));
    EXPECT_THROW(exit_side(s, {0.1, 0.2}), Error);
}

TEST(Surface, WordAxes) {
    Surface s = Surface::build(2);
    Geodesic g = axis(s, {2, 8, 5});
    Mobius m = word_product(s, {2, 8, 5});
    EXPECT_LT(angular_distance(apply(m, g.w), g.w), 1e-10);
    EXPECT_LT(angular_distance(apply(m, g.u), g.u), 1e-10);
    EXPECT_THROW(word_product(s, {2, 13}), Error);
    EXPECT_THROW(axis(s, std::vector<int>{}), Error);
}
