#include "geocoder/duality.hpp"

#include <algorithm>
#include <random>

namespace geocoder {

namespace {

// Cells whose (2b+1)^2 neighbourhood is constant in g.
std::vector<std::uint8_t> interior_mask(const std::vector<std::uint8_t>& g, int N, int b) {
    std::vector<std::uint8_t> out(g.size(), 1);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            std::uint8_t v = g[static_cast<std::size_t>(r) * N + c];
            bool flat = true;
            for (int dr = -b; dr <= b && flat; ++dr)
                for (int dc = -b; dc <= b; ++dc) {
                    int rr = (r + dr + N) % N, cc = (c + dc + N) % N;
                    if (g[static_cast<std::size_t>(rr) * N + cc] != v) {
                        flat = false;
                        break;
                    }
                }
            out[static_cast<std::size_t>(r) * N + c] = flat;
        }
    return out;
}

double distance_to_arc(double x, double lo, double hi) {
    if (in_closed_arc(x, lo, hi, 0)) return 0;
    return std::min(ccw(hi, x), ccw(x, lo));
}

}  // namespace

DualityVerdict dual_check(const Surface& s, const Attractor& a, const Attractor& b, const DualityOptions& opt) {
    DualityVerdict v;
    const int N = opt.grid_size;
    v.grid_size = N;
    std::vector<std::uint8_t> ga = rasterize(a, N), gb = rasterize(b, N);
    std::vector<std::uint8_t> ia = interior_mask(ga, N, opt.boundary_band);
    std::vector<std::uint8_t> ib = interior_mask(gb, N, opt.boundary_band);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c) {
            std::size_t kb = static_cast<std::size_t>(r) * N + c;
            std::size_t ka = static_cast<std::size_t>(c) * N + r;
            if (ga[ka] == gb[kb]) continue;
            ++v.mismatched_cells;
            if (ia[ka] && ib[kb]) ++v.interior_mismatches;
        }
    v.reflection_match = v.interior_mismatches == 0;

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> angle(0.0, two_pi);
    const Partition& A = a.partition;
    const Partition& B = b.partition;
    const double sa = 10 * angle_tol();
    const double inset = 1e-7;
    int attempts = 0;
    while (v.samples < opt.samples && attempts < 1000 * opt.samples) {
        ++attempts;
        double u = angle(rng), w = angle(rng);
        if (a.margin(u, w) < inset) continue;
        ++v.samples;
        // F_A' acts on (w, u) through the strip of u; its result must be phi of F_A^-1(u, w).
        int m = strip_of(B, u);
        const Mobius& t = s.T(m);
        double x = apply(t, u), y = apply(t, w);
        int back = s.sigma(m);
        double err = distance_to_arc(y, A.at(back), A.at(back + 1));
        double margin = a.margin(x, y);
        if (margin < -sa) err = std::max(err, -margin);
        if (err > v.max_diagram_error) v.max_diagram_error = err;
        if (err > 1e-8 && !v.counterexample) v.counterexample = Geodesic{u, w};
    }
    v.diagram_commutes = v.samples > 0 && v.max_diagram_error < 1e-8;
    if (!v.reflection_match && !v.counterexample) {
        for (int r = 0; r < N && !v.counterexample; ++r)
            for (int c = 0; c < N; ++c) {
                std::size_t kb = static_cast<std::size_t>(r) * N + c;
                std::size_t ka = static_cast<std::size_t>(c) * N + r;
                if (ga[ka] != gb[kb] && ia[ka] && ib[kb]) {
                    double h = two_pi / N;
                    v.counterexample = Geodesic{(r + 0.5) * h, (c + 0.5) * h};
                    break;
                }
            }
    }
    return v;
}

DualityVerdict dual_check(const Surface& s, const Partition& a, const Partition& b, const DualityOptions& opt) {
    return dual_check(s, attractor(s, a), attractor(s, b), opt);
}

std::vector<int> backward_expansion(const Surface& s, const Partition& A, double u, int n) {
    std::vector<int> out;
    for (int k = 0; k < n; ++k) {
        CircleStep st = boundary_step(s, A, u);
        out.push_back(st.i);
        u = st.x;
    }
    return out;
}

NoDualReport no_dual_probe(const Surface& s, int trials, std::uint64_t seed, const DualityOptions& opt) {
    NoDualReport rep;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        std::vector<double> pts;
        for (int i = 1; i <= s.n(); ++i) {
            CycleInterval iv = short_cycle_interval(s, i);
            pts.push_back(wrap(iv.b + unit(rng) * ccw(iv.b, iv.a)));
        }
        return custom_partition(s, pts, "random");
    };
    for (int t = 0; t < trials; ++t) {
        Partition a = draw(), b = draw();
        DualityOptions o = opt;
        o.seed = seed + static_cast<std::uint64_t>(t);
        DualityVerdict v = dual_check(s, attractor(s, a), attractor(s, b), o);
        ++rep.trials;
        if (v.dual()) ++rep.dual_found;
        double frac = static_cast<double>(v.interior_mismatches) / (static_cast<double>(o.grid_size) * o.grid_size);
        rep.min_interior_fraction = std::min(rep.min_interior_fraction, frac);
    }
    return rep;
}

}  // namespace geocoder
