#include <gtest/gtest.h>

#include "geocoder/boundary.hpp"
#include "support.hpp"

using namespace geocoder;
using geocoder::testing::interior_samples;

namespace {

int disagreements(const Attractor& x, const Attractor& y, int samples, double band) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> t(0, two_pi);
    int bad = 0;
    for (int k = 0; k < samples; ++k) {
        double u = t(rng), w = t(rng);
        double a = x.margin(u, w), b = y.margin(u, w);
        if ((a > 0) != (b > 0) && std::min(std::abs(a), std::abs(b)) > band) ++bad;
    }
    return bad;
}

void expect_invariant(const Surface& s, const Attractor& at) {
    int fwd = 0, bwd = 0;
    for (const Geodesic& g : interior_samples(at, 5000, 3)) {
        PairStep f = natural_extension_step(s, at.partition, g.u, g.w);
        if (at.margin(f.u, f.w) < -1e-9) ++fwd;
        try {
            PairStep b = inverse_step(s, at, g.u, g.w);
            PairStep back = natural_extension_step(s, at.partition, b.u, b.w);
            if (std::max(angular_distance(back.u, g.u), angular_distance(back.w, g.w)) > 1e-9) ++bwd;
        } catch (const Error&) {
            ++bwd;
        }
    }
    EXPECT_EQ(fwd, 0) << at.partition.label;
    EXPECT_EQ(bwd, 0) << at.partition.label;
}

}  // namespace

TEST(Partition, Kinds) {
    Surface s = Surface::build(2);
    Partition m = make_partition(s, PartitionKind::Midpoints);
    for (int i = 1; i <= s.n(); ++i) EXPECT_DOUBLE_EQ(m.at(i), s.M(i));
    Partition p = parse_partition(s, "endpoints:P");
    Partition q = parse_partition(s, "endpoints:Q");
    Partition pq = parse_partition(s, "endpoints:PQ");
    for (int i = 1; i <= s.n(); ++i) {
        EXPECT_DOUBLE_EQ(p.at(i), s.P(i));
        EXPECT_DOUBLE_EQ(q.at(i), s.Q(i));
        EXPECT_DOUBLE_EQ(pq.at(i), i % 2 ? s.P(i) : s.Q(i));
    }
    EXPECT_TRUE(p.endpoints());
    EXPECT_FALSE(m.endpoints());
    Partition prod = parse_partition(s, "product");
    for (int i = 1; i <= s.n(); ++i) {
        CycleInterval iv = short_cycle_interval(s, i);
        EXPECT_TRUE(in_closed_arc(prod.at(i), iv.b, iv.a, 1e-12));
    }
}

TEST(Partition, Errors) {
    Surface s = Surface::build(2);
    try {
        parse_partition(s, "endpoints:PXQ");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPattern);
    }
    try {
        parse_partition(s, "endpoints:PQPQP");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPattern);
    }
    EXPECT_THROW(parse_partition(s, "custom:1,2,3"), Error);
    EXPECT_THROW(parse_partition(s, "nonsense"), Error);
    std::vector<double> bad(s.n());
    for (int i = 1; i <= s.n(); ++i) bad[i - 1] = s.M(i);
    bad[3] = s.M(7);
    EXPECT_THROW(custom_partition(s, bad), Error);
}

TEST(Partition, StripOf) {
    Surface s = Surface::build(2);
    Partition A = make_partition(s, PartitionKind::Midpoints);
    for (int i = 1; i <= s.n(); ++i) {
        EXPECT_EQ(strip_of(A, A.at(i)), i);
        EXPECT_EQ(strip_of(A, midpoint(A.at(i), A.at(i + 1))), i);
    }
}

class ShortCycle : public ::testing::TestWithParam<std::tuple<int, const char*>> {};

TEST_P(ShortCycle, Holds) {
    auto [g, spec] = GetParam();
    Surface s = Surface::build(g);
    Partition A = parse_partition(s, spec);
    CycleReport rep = cycle_report(s, A);
    EXPECT_TRUE(rep.all_short());
    for (int i = 1; i <= s.n(); ++i) {
        // f(T_i A_i) and f(T_{i-1} A_i) agree, computed without cycle_report.
        double a = A.at(i);
        CircleStep x = boundary_step(s, A, apply(s.T(i), a));
        CircleStep y = boundary_step(s, A, apply(s.T(i - 1), a));
        EXPECT_LT(angular_distance(x.x, y.x), 1e-9) << spec << " i=" << i;
        EXPECT_TRUE(in_closed_arc(s.M(i), rep.at(i).interval.b, rep.at(i).interval.a, 0));
    }
}

INSTANTIATE_TEST_SUITE_P(Partitions, ShortCycle,
                         ::testing::Combine(::testing::Values(2, 3),
                                            ::testing::Values("midpoints", "product", "mixed")));

TEST(ShortCycle, FailsOutsideInterval) {
    Surface s = Surface::build(2);
    std::vector<double> A;
    for (int i = 1; i <= s.n(); ++i) A.push_back(s.M(i));
    // [b_1, a_1] is sufficient whatever the neighbours are; near Q_1 the cycle breaks.
    A[0] = wrap(s.P(1) + 0.95 * ccw(s.P(1), s.Q(1)));
    CycleReport rep = cycle_report(s, custom_partition(s, A));
    EXPECT_FALSE(rep.all_short());
    EXPECT_FALSE(rep.at(1).short_cycle);
    EXPECT_GT(rep.at(1).mismatch, 1e-6);
}

class AttractorByPartition : public ::testing::TestWithParam<const char*> {};

TEST_P(AttractorByPartition, Invariant) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, GetParam()));
    expect_invariant(s, at);
}

TEST_P(AttractorByPartition, GloballyAttracting) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, GetParam()));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> t(0, two_pi);
    for (int k = 0; k < 500; ++k) {
        double u = t(rng), w = t(rng);
        if (angular_distance(u, w) < 1e-3) continue;
        Reduction r = reduce(s, at, u, w);
        EXPECT_TRUE(at.contains(r.u, r.w));
        EXPECT_TRUE(is_reduced(at, r.u, r.w));
    }
}

TEST_P(AttractorByPartition, AvoidsDiagonal) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, GetParam()));
    for (int k = 0; k < 360; ++k) {
        double u = two_pi * k / 360;
        EXPECT_FALSE(at.contains(u, wrap(u + 1e-3)));
        EXPECT_FALSE(at.contains(u, wrap(u - 1e-3)));
    }
}

INSTANTIATE_TEST_SUITE_P(Partitions, AttractorByPartition,
                         ::testing::Values("midpoints", "product", "mixed", "endpoints:P", "endpoints:Q",
                                           "endpoints:PQ", "endpoints:PPQQ"));

TEST(Attractor, ClosedFormMatchesIteration) {
    Surface s = Surface::build(2);
    for (const char* spec : {"midpoints", "product", "mixed"}) {
        Partition A = parse_partition(s, spec);
        Attractor closed = attractor(s, A);
        EXPECT_EQ(closed.provenance, Provenance::ClosedForm);
        EXPECT_EQ(closed.rects.size(), 3u * s.n());
        Attractor num = numeric_attractor(s, A);
        EXPECT_EQ(num.provenance, Provenance::Numeric);
        EXPECT_EQ(disagreements(closed, num, 200000, 1e-9), 0) << spec;
    }
    // For the P endpoints the closed form is still correct once degenerate pieces are snapped.
    Partition P = parse_partition(s, "endpoints:P");
    Attractor closed = closed_form_attractor(s, P, cycle_report(s, P));
    EXPECT_EQ(disagreements(closed, attractor(s, P), 200000, 1e-9), 0);
}

TEST(Attractor, EndpointAttractorsMirror) {
    Surface s = Surface::build(2);
    Attractor p = attractor(s, parse_partition(s, "endpoints:P"));
    Attractor q = attractor(s, parse_partition(s, "endpoints:Q"));
    EXPECT_EQ(p.provenance, Provenance::Numeric);
    for (const Geodesic& g : interior_samples(p, 5000, 4, 1e-6)) EXPECT_TRUE(q.contains(g.w, g.u));
    for (const Geodesic& g : interior_samples(q, 5000, 5, 1e-6)) EXPECT_TRUE(p.contains(g.w, g.u));
}

TEST(Attractor, GenusThree) {
    Surface s = Surface::build(3);
    for (const char* spec : {"midpoints", "endpoints:P"}) {
        Attractor at = attractor(s, parse_partition(s, spec));
        expect_invariant(s, at);
    }
}

TEST(Attractor, NonShortCyclePartitionsSettle) {
    Surface s = Surface::build(2);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> x(0.01, 0.99);
    for (int t = 0; t < 3; ++t) {
        std::vector<double> A;
        for (int i = 1; i <= s.n(); ++i) A.push_back(wrap(s.P(i) + x(rng) * ccw(s.P(i), s.Q(i))));
        Partition P = custom_partition(s, A);
        EXPECT_FALSE(cycle_report(s, P).all_short());
        Attractor at = attractor(s, P);
        EXPECT_EQ(at.provenance, Provenance::Numeric);
        expect_invariant(s, at);
    }
}

TEST(Attractor, NoFiniteStructureWithinLimits) {
    Surface s = Surface::build(2);
    Partition A = parse_partition(s, "midpoints");
    try {
        numeric_attractor(s, A, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoFiniteStructure);
    }
    try {
        numeric_attractor(s, A, 1000, 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NoFiniteStructure);
    }
}

TEST(Attractor, SectionsAndRaster) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    for (int k = 0; k < 100; ++k) {
        double w = two_pi * (k + 0.5) / 100;
        for (const Arc& a : at.section(w)) {
            EXPECT_TRUE(at.contains(midpoint(a.lo, a.hi), w));
            EXPECT_NEAR(arc_margin(a, midpoint(a.lo, a.hi)), 0.5 * arc_length(a), 1e-12);
        }
    }
    auto grid = rasterize(at, 64);
    EXPECT_EQ(grid.size(), 64u * 64u);
    std::size_t on = 0;
    for (auto v : grid) on += v;
    EXPECT_GT(on, 0u);
    EXPECT_LT(on, grid.size());
}

TEST(Attractor, NotInAttractorAndMaxSteps) {
    Surface s = Surface::build(2);
    Attractor at = attractor(s, parse_partition(s, "midpoints"));
    try {
        inverse_step(s, at, 0.1, 0.1 + 1e-3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotInAttractor);
    }
    try {
        reduce(s, at, 0.1, 0.1 + 1e-6, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MaxStepsExceeded);
    }
}

TEST(Arcs, Intersections) {
    auto parts = intersect_arcs({6.0, 1.0}, {0.5, 6.1});
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_TRUE(intersect_arcs({0.0, 1.0}, {2.0, 3.0}).empty());
    auto one = intersect_arcs({0.0, 2.0}, {1.0, 3.0});
    ASSERT_EQ(one.size(), 1u);
    EXPECT_NEAR(one[0].lo, 1.0, 1e-15);
    EXPECT_NEAR(one[0].hi, 2.0, 1e-15);
    EXPECT_LT(arc_margin({0.0, 1.0}, 2.0), 0);
}
