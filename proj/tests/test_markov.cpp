#include <gtest/gtest.h>

#include "geocoder/markov.hpp"
#include "support.hpp"

using namespace geocoder;

namespace {

struct Built {
    Attractor at;
    FinePartition fine;
    TransitionMatrix tm;
};

Built build(const Surface& s, const Partition& A) {
    Attractor at = attractor(s, A);
    FinePartition f = fine_partition(s, A, at);
    TransitionMatrix tm = transition_matrix(s, f);
    return {at, f, tm};
}

// lambda from tr(M^{k+1}) / tr(M^k), with rescaling.
double trace_ratio(const TransitionMatrix& tm, int k) {
    const int N = tm.size;
    std::vector<double> P(N * N, 0), Q(N * N);
    for (int a = 0; a < N; ++a) P[a * N + a] = 1;
    double last = 0, ratio = 0;
    for (int step = 0; step <= k; ++step) {
        std::fill(Q.begin(), Q.end(), 0.0);
        for (int a = 0; a < N; ++a)
            for (int c = 0; c < N; ++c)
                if (tm.at(c, a))
                    for (int b = 0; b < N; ++b) Q[b * N + a] += P[b * N + c];
        double tr = 0, mx = 0;
        for (int a = 0; a < N; ++a) tr += Q[a * N + a];
        for (double v : Q) mx = std::max(mx, v);
        if (last > 0) ratio = tr / last;
        for (double& v : Q) v /= mx;
        last = tr / mx;
        P.swap(Q);
    }
    return ratio;
}

}  // namespace

TEST(Markov, MidpointMatrix) {
    Surface s = Surface::build(2);
    Partition A = parse_partition(s, "midpoints");
    EXPECT_TRUE(all_witnessed(markov_condition(s, A, cycle_report(s, A))));
    Built b = build(s, A);
    EXPECT_EQ(b.tm.size, 36);
    int ones = 0;
    for (auto v : b.tm.m) ones += v;
    EXPECT_EQ(ones, 348);
    double lambda = perron_eigenvalue(b.tm);
    EXPECT_NEAR(lambda, trace_ratio(b.tm, 120), 1e-9);
    // Every state has a successor and a predecessor.
    for (int a = 0; a < b.tm.size; ++a) {
        int row = 0, col = 0;
        for (int c = 0; c < b.tm.size; ++c) {
            row += b.tm.at(a, c);
            col += b.tm.at(c, a);
        }
        EXPECT_GT(row, 0);
        EXPECT_GT(col, 0);
    }
}

TEST(Markov, OtherShortCyclePartitions) {
    Surface s = Surface::build(2);
    for (const char* spec : {"product", "mixed"}) {
        Partition A = parse_partition(s, spec);
        EXPECT_TRUE(all_witnessed(markov_condition(s, A, cycle_report(s, A)))) << spec;
        Built b = build(s, A);
        double lambda = perron_eigenvalue(b.tm);
        EXPECT_NEAR(lambda, trace_ratio(b.tm, 120), 1e-8) << spec;
        EXPECT_GT(lambda, 1);
    }
    FinePartition f = build(s, parse_partition(s, "mixed")).fine;
    EXPECT_FALSE(f.degenerate.empty());
}

TEST(Markov, SoficWords) {
    Surface s = Surface::build(2);
    Built b = build(s, parse_partition(s, "midpoints"));
    SoficGraph g = sofic_presentation(s, b.tm);
    EXPECT_TRUE(accepts_periodic(g, {2, 8, 5}));
    EXPECT_TRUE(accepts_periodic(g, {8, 5, 2}));
    EXPECT_TRUE(accepts_periodic(g, {5, 4, 7, 6}));
    EXPECT_FALSE(accepts_periodic(g, {4, 5, 2, 7}));
    EXPECT_FALSE(accepts_periodic(g, {4, 5, 2}));
    EXPECT_FALSE(accepts_periodic(g, {}));
    std::string dot = to_dot(g);
    EXPECT_EQ(dot.rfind("digraph", 0), 0u);
    EXPECT_NE(dot.find("->"), std::string::npos);
}

TEST(Markov, RandomPartitionsAlmostNeverMarkov) {
    Surface s = Surface::build(2);
    std::mt19937_64 rng(11);
    int fail = 0;
    for (int k = 0; k < 100; ++k) {
        Partition A = geocoder::testing::random_short_cycle(s, rng);
        CycleReport rep = cycle_report(s, A);
        ASSERT_TRUE(rep.all_short());
        if (!all_witnessed(markov_condition(s, A, rep))) ++fail;
    }
    EXPECT_GE(fail, 95);
}

TEST(Markov, WitnessFailureIsReported) {
    Surface s = Surface::build(2);
    std::vector<double> A;
    for (int i = 1; i <= s.n(); ++i) A.push_back(s.M(i));
    A[10] = fixed_points(word_product(s, {4, 5, 2})).attracting;
    Partition P = custom_partition(s, A);
    auto w = markov_condition(s, P, cycle_report(s, P));
    EXPECT_FALSE(all_witnessed(w));
    EXPECT_EQ(w[10].kind, WitnessKind::None);
    try {
        build(s, P);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMarkov);
    }
}

TEST(Markov, FinePartitionNeedsClosedForm) {
    Surface s = Surface::build(2);
    Partition P = parse_partition(s, "endpoints:P");
    Attractor at = attractor(s, P);
    EXPECT_THROW(fine_partition(s, P, at), Error);
}
