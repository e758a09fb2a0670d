#include <gtest/gtest.h>

#include "geocoder/coding.hpp"
#include "geocoder/measure.hpp"
#include "support.hpp"

using namespace geocoder;

namespace {

// Gauss-Legendre on each axis; the density is smooth away from the diagonal.
double quadrature(const Rect& r, int n = 64) {
    static const double x[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
    static const double wt[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                                0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
    double lu = ccw(r.u_lo, r.u_hi), lw = ccw(r.w_lo, r.w_hi);
    double hu = lu / n, hw = lw / n, total = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < 8; ++a)
                for (int b = 0; b < 8; ++b) {
                    double u = r.u_lo + hu * (i + 0.5 + 0.5 * x[a]);
                    double w = r.w_lo + hw * (j + 0.5 + 0.5 * x[b]);
                    double s = std::sin(0.5 * (u - w));
                    total += wt[a] * wt[b] * 0.25 * hu * hw / (4 * s * s);
                }
    return total;
}

}  // namespace

TEST(Mass, MatchesQuadrature) {
    for (Rect r : {Rect{0.5, 1.5, 3.0, 4.0}, Rect{5.5, 0.7, 2.0, 3.5}, Rect{1.0, 1.2, 1.4, 6.0},
                   Rect{4.0, 4.5, 0.1, 3.5}}) {
        EXPECT_NEAR(rect_mass(r), quadrature(r), 1e-10 * std::max(1.0, rect_mass(r)));
    }
}

TEST(Mass, SymmetricAndAdditive) {
    Rect r{0.5, 1.5, 3.0, 4.0};
    Rect swapped{3.0, 4.0, 0.5, 1.5};
    EXPECT_NEAR(rect_mass(r), rect_mass(swapped), 1e-13);
    Rect left{0.5, 1.1, 3.0, 4.0}, right{1.1, 1.5, 3.0, 4.0};
    EXPECT_NEAR(rect_mass(r), rect_mass(left) + rect_mass(right), 1e-13);
    EXPECT_EQ(rect_mass(Rect{1.0, 1.0, 3.0, 4.0}), 0.0);
    try {
        rect_mass(Rect{0.5, 1.5, 1.0, 2.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TouchesDiagonal);
    }
}

TEST(Mass, MobiusInvariant) {
    Surface s = Surface::build(2);
    Rect r{0.5, 1.0, 3.0, 3.4};
    for (int i = 1; i <= s.n(); ++i) {
        const Mobius& t = s.T(i);
        Rect img{apply(t, r.u_lo), apply(t, r.u_hi), apply(t, r.w_lo), apply(t, r.w_hi)};
        EXPECT_NEAR(rect_mass(img), rect_mass(r), 1e-11);
    }
}

TEST(Mass, SameForEveryPartition) {
    Surface s = Surface::build(2);
    double K = total_mass(attractor(s, parse_partition(s, "midpoints")));
    EXPECT_GT(K, 0);
    for (const char* spec : {"product", "mixed", "endpoints:P", "endpoints:Q", "endpoints:PQ"})
        EXPECT_NEAR(total_mass(attractor(s, parse_partition(s, spec))), K, 1e-9) << spec;
    EXPECT_NEAR(total_mass(attractor(s, geocoder::testing::examples_partition(s))), K, 1e-9);
}

TEST(Mass, MonteCarloAgrees) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    MassEstimate mc = monte_carlo_mass(s, at, 1000000, 3);
    EXPECT_EQ(mc.samples, 1000000u);
    EXPECT_LT(std::abs(mc.value - total_mass(at)), 4 * mc.stderr_);
    // Different seeds give different draws; same seed is reproducible.
    EXPECT_EQ(monte_carlo_mass(s, at, 10000, 5).value, monte_carlo_mass(s, at, 10000, 5).value);
}

TEST(Mass, DiagonalGapIsEmpty) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "endpoints:P"));
    double d = diagonal_gap(s);
    for (int k = 0; k < 1000; ++k) {
        double u = two_pi * k / 1000;
        EXPECT_FALSE(at.contains(u, wrap(u + 0.999 * d), 0));
        EXPECT_FALSE(at.contains(u, wrap(u - 0.999 * d), 0));
    }
}

TEST(Entropy, ProductIsTopological) {
    for (int g : {2, 3}) {
        Surface s = Surface::build(g);
        Attractor at = attractor(s, parse_partition(s, "midpoints"));
        MeasureReport r = entropy(s, at);
        EXPECT_NEAR(r.entropy * r.K, pi * pi * (2 * g - 2), 1e-12);
        EXPECT_EQ(r.method, MassMethod::ClosedForm);
        MeasureReport m = entropy(s, at, MassMethod::MonteCarlo, 200000, 2);
        EXPECT_NEAR(m.entropy * m.K, pi * pi * (2 * g - 2), 1e-12);
        EXPECT_LT(std::abs(m.K - r.K), 4 * m.K_error);
    }
}

TEST(Entropy, MeanReturnTime) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    MassEstimate g = mean_return_time(s, at, 20000, 4);
    EXPECT_GT(g.stderr_, 0);
    // Kac: the unit tangent bundle has volume 2 pi * 2 pi (2g - 2) = 8 pi^2, the section has mass 2K.
    EXPECT_LT(std::abs(g.value - 4 * pi * pi / total_mass(at)), 4 * g.stderr_);
    for (const Geodesic& x : geocoder::testing::interior_samples(at, 200, 6))
        EXPECT_GT(return_time(s, at, x.u, x.w), 0);
}
