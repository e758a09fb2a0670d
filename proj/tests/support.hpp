#pragma once

#include <random>
#include <vector>

#include "geocoder/boundary.hpp"

namespace geocoder::testing {

// Midpoints, except A_1 between the second iterate of the Example 2 axis and a_1,
// and A_11 at the attracting fixed point of T_4 T_5 T_2.
inline Partition examples_partition(const Surface& s) {
    std::vector<double> A;
    for (int i = 1; i <= s.n(); ++i) A.push_back(s.M(i));
    Geodesic g = apply(s.T(10), apply(s.T(3), axis(s, {5, 4, 7, 6})));
    A[0] = midpoint(g.w, short_cycle_interval(s, 1).a);
    A[10] = fixed_points(word_product(s, {4, 5, 2})).attracting;
    return custom_partition(s, A, "examples");
}

inline Partition random_short_cycle(const Surface& s, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> x(0, 1);
    std::vector<double> A;
    for (int i = 1; i <= s.n(); ++i) {
        CycleInterval iv = short_cycle_interval(s, i);
        A.push_back(wrap(iv.b + x(rng) * ccw(iv.b, iv.a)));
    }
    return custom_partition(s, A, "random");
}

// Uniform points with margin at least `inset` inside the attractor.
inline std::vector<Geodesic> interior_samples(const Attractor& at, int count, std::uint64_t seed,
                                              double inset = 1e-7) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> t(0, two_pi);
    std::vector<Geodesic> out;
    while (static_cast<int>(out.size()) < count) {
        double u = t(rng), w = t(rng);
        if (at.margin(u, w) > inset) out.push_back({u, w});
    }
    return out;
}

}  // namespace geocoder::testing
