#include "geocoder/coding.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

namespace geocoder {

const char* to_string(CodeFlavor f) { return f == CodeFlavor::Arithmetic ? "arithmetic" : "geometric"; }

const char* to_string(Region r) {
    switch (r) {
        case Region::O: return "O";
        case Region::LowerBulge: return "lower-bulge";
        case Region::UpperBulge: return "upper-bulge";
        case Region::LowerCorner: return "lower-corner";
        case Region::UpperCorner: return "upper-corner";
    }
    return "unknown";
}

std::vector<int> canonical_rotation(const std::vector<int>& word) {
    std::vector<int> best = word;
    std::vector<int> r = word;
    for (std::size_t k = 1; k < word.size(); ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (r < best) best = r;
    }
    return best;
}

GeoStep geometric_step(const Surface& s, double u, double w) {
    int i = exit_side(s, {u, w});
    const Mobius& t = s.T(i);
    return {apply(t, u), apply(t, w), i};
}

GeoStep geometric_inverse_step(const Surface& s, double u, double w) {
    int j = entry_side(s, {u, w});
    const Mobius& t = s.T(j);
    return {apply(t, u), apply(t, w), j};
}

bool in_omega_g(const Surface& s, double u, double w) { return s.cross({u, w}).hit; }

RegionTag classify(const Surface& s, const Attractor& attr, double u, double w) {
    bool in_g = in_omega_g(s, u, w);
    bool in_a = attr.contains(u, w);
    if (!in_g && !in_a) throw Error(ErrorKind::Unclassifiable, "point lies in neither Omega_G nor the attractor");
    if (in_g && in_a) return {Region::O, 0};
    bool lower = ccw(w, u) < pi;
    int idx = 0;
    for (int i = 1; i <= s.n() && idx == 0; ++i) {
        bool hit = lower ? in_arc(u, s.Q(i + 1), s.Q(i + 2)) : in_arc(u, s.P(i - 1), s.P(i));
        if (hit) idx = i;
    }
    if (in_g) return {lower ? Region::LowerBulge : Region::UpperBulge, idx};
    return {lower ? Region::LowerCorner : Region::UpperCorner, idx};
}

Mobius phi_map(const Surface& s, const RegionTag& tag) {
    switch (tag.region) {
        case Region::O: return Mobius::identity();
        case Region::LowerBulge: return s.U(s.tau(tag.index) + 1);
        case Region::UpperBulge: return s.U(s.tau(tag.index));
        default: break;
    }
    throw Error(ErrorKind::Unclassifiable, "phi is defined on Omega_G");
}

Mobius phi_inverse_map(const Surface& s, const RegionTag& tag) {
    switch (tag.region) {
        case Region::O: return Mobius::identity();
        case Region::UpperCorner: return inverse(s.U(tag.index));
        case Region::LowerCorner: return inverse(s.U(tag.index + 1));
        default: break;
    }
    throw Error(ErrorKind::Unclassifiable, "phi inverse is defined on the attractor");
}

Geodesic phi(const Surface& s, const Attractor& attr, double u, double w) {
    RegionTag t = classify(s, attr, u, w);
    if (t.region == Region::LowerCorner || t.region == Region::UpperCorner)
        throw Error(ErrorKind::Unclassifiable, "point is not in Omega_G");
    return apply(phi_map(s, t), Geodesic{u, w});
}

Geodesic phi_inverse(const Surface& s, const Attractor& attr, double u, double w) {
    RegionTag t = classify(s, attr, u, w);
    if (t.region == Region::LowerBulge || t.region == Region::UpperBulge)
        throw Error(ErrorKind::Unclassifiable, "point is not in the attractor");
    return apply(phi_inverse_map(s, t), Geodesic{u, w});
}

namespace {

constexpr double kPeriodTol = 1e-8;
constexpr int kPeriodSearch = 256;

bool returns_to(const Geodesic& a, double u, double w) {
    return angular_distance(a.u, u) < kPeriodTol && angular_distance(a.w, w) < kPeriodTol;
}

template <class Step>
void run_future(CodingSequence& c, Geodesic g, int n_future, Step step) {
    const Geodesic start = g;
    int horizon = std::max(n_future, kPeriodSearch);
    std::vector<int> symbols;
    for (int k = 0; k < horizon; ++k) {
        auto [sym, next] = step(g);
        symbols.push_back(sym);
        g = next;
        if (returns_to(start, g.u, g.w)) {
            // Continue by repetition rather than by iterating an unstable orbit.
            c.period = symbols;
            break;
        }
    }
    if (!c.period.empty() && static_cast<int>(symbols.size()) < n_future) {
        std::size_t p = symbols.size();
        for (int k = static_cast<int>(p); k < n_future; ++k) symbols.push_back(symbols[k % p]);
    }
    symbols.resize(n_future);
    c.future = std::move(symbols);
}

}  // namespace

CodingSequence arithmetic_code(const Surface& s, const Attractor& attr, Geodesic g, int n_future, int n_past,
                               bool auto_reduce) {
    if (n_future < 0 || n_past < 0) throw Error(ErrorKind::InvalidArgument, "negative code length");
    CodingSequence c;
    c.flavor = CodeFlavor::Arithmetic;
    c.genus = s.genus();
    c.partition_kind = attr.partition.label;
    if (!attr.contains(g.u, g.w)) {
        if (!auto_reduce) throw Error(ErrorKind::NotReduced, "geodesic is not reduced");
        Reduction r = reduce(s, attr, g.u, g.w);
        c.reducing_word = r.applied;
        g = {r.u, r.w};
    }
    run_future(c, g, n_future, [&](const Geodesic& x) {
        PairStep st = natural_extension_step(s, attr.partition, x.u, x.w);
        return std::pair<int, Geodesic>{s.sigma(st.i), {st.u, st.w}};
    });
    Geodesic x = g;
    for (int k = 0; k < n_past; ++k) {
        PairStep st = inverse_step(s, attr, x.u, x.w);
        c.past.push_back(s.sigma(st.i));
        x = {st.u, st.w};
    }
    return c;
}

CodingSequence geometric_code(const Surface& s, Geodesic g, int n_future, int n_past) {
    if (n_future < 0 || n_past < 0) throw Error(ErrorKind::InvalidArgument, "negative code length");
    CodingSequence c;
    c.flavor = CodeFlavor::Geometric;
    c.genus = s.genus();
    c.partition_kind = "geometric";
    if (!in_omega_g(s, g.u, g.w)) throw Error(ErrorKind::NoIntersection, "geodesic misses the fundamental polygon");
    run_future(c, g, n_future, [&](const Geodesic& x) {
        GeoStep st = geometric_step(s, x.u, x.w);
        return std::pair<int, Geodesic>{s.sigma(st.side), {st.u, st.w}};
    });
    Geodesic x = g;
    for (int k = 0; k < n_past; ++k) {
        GeoStep st = geometric_inverse_step(s, x.u, x.w);
        c.past.push_back(st.side);
        x = {st.u, st.w};
    }
    return c;
}

cplx cross_section_point(const Surface& s, const Attractor& attr, double u, double w) {
    RegionTag t = classify(s, attr, u, w);
    if (t.region == Region::LowerBulge || t.region == Region::UpperBulge)
        throw Error(ErrorKind::NotReduced, "geodesic is not reduced");
    if (t.region == Region::O) return s.cross({u, w}).entry;
    Mobius m = inverse(phi_inverse_map(s, t));
    Crossing c = s.cross(apply(inverse(m), Geodesic{u, w}));
    if (!c.hit) throw Error(ErrorKind::NoIntersection, "corner geodesic misses the corner image");
    return apply_disk(m, c.entry);
}

double arclength(cplx z, double u, double w) {
    return std::log(std::abs(z - std::polar(1.0, u)) / std::abs(z - std::polar(1.0, w)));
}

double return_time(const Surface& s, const Attractor& attr, double u, double w) {
    if (!attr.contains(u, w)) throw Error(ErrorKind::NotReduced, "geodesic is not reduced");
    cplx z0 = cross_section_point(s, attr, u, w);
    PairStep st = natural_extension_step(s, attr.partition, u, w);
    cplx z1 = cross_section_point(s, attr, st.u, st.w);
    cplx back = apply_disk(inverse(s.T(st.i)), z1);
    return arclength(back, u, w) - arclength(z0, u, w);
}

double FirstReturn::error() const {
    return std::max(std::abs(arithmetic_time - geometric_time), std::abs(arithmetic_point - geometric_point));
}

FirstReturn first_return(const Surface& s, const Attractor& attr, double u, double w) {
    FirstReturn r;
    RegionTag t = classify(s, attr, u, w);
    Mobius to_g = phi_inverse_map(s, t);
    Geodesic gg = apply(to_g, Geodesic{u, w});
    Crossing c = s.cross(gg);
    if (!c.hit) throw Error(ErrorKind::NoIntersection, "Phi^-1 image misses the fundamental polygon");
    r.geometric_time = arclength(c.exit, gg.u, gg.w) - arclength(c.entry, gg.u, gg.w);
    r.geometric_point = apply_disk(inverse(to_g), c.exit);

    cplx z0 = cross_section_point(s, attr, u, w);
    PairStep st = natural_extension_step(s, attr.partition, u, w);
    cplx z1 = cross_section_point(s, attr, st.u, st.w);
    r.arithmetic_point = apply_disk(inverse(s.T(st.i)), z1);
    r.arithmetic_time = arclength(r.arithmetic_point, u, w) - arclength(z0, u, w);
    return r;
}

bool case4_event(const Surface& s, const Attractor& attr, double u, double w) {
    RegionTag t = classify(s, attr, u, w);
    if (t.region != Region::UpperCorner) return false;
    int i = t.index;
    if (strip_of(attr.partition, w) != s.wrap_index(i + 1)) return false;
    Crossing c = s.cross(apply(inverse(s.U(i)), Geodesic{u, w}));
    return c.hit && c.exit_side == s.wrap_index(s.tau(i) - 2);
}

namespace {

std::optional<Arc> component_with(const std::vector<Arc>& arcs, double x) {
    for (const Arc& a : arcs)
        if (in_closed_arc(x, a.lo, a.hi, 1e-12)) return a;
    return std::nullopt;
}

// Symbols n_{-m} .. n_m, or nothing when the orbit leaves the attractor.
std::optional<std::vector<int>> code_window(const Surface& s, const Attractor& attr, double u, double w, int m) {
    if (!attr.contains(u, w, 0)) return std::nullopt;
    std::vector<int> out(2 * m + 1);
    double fu = u, fw = w;
    for (int k = 0; k <= m; ++k) {
        PairStep st = natural_extension_step(s, attr.partition, fu, fw);
        out[m + k] = st.i;
        fu = st.u;
        fw = st.w;
    }
    double bu = u, bw = w;
    try {
        for (int k = 1; k <= m; ++k) {
            PairStep st = inverse_step(s, attr, bu, bw);
            out[m - k] = st.i;
            bu = st.u;
            bw = st.w;
        }
    } catch (const Error&) {
        return std::nullopt;
    }
    return out;
}

}  // namespace

ProbeResult code_continuity_probe(const Surface& s, const Attractor& attr, int m, int samples, std::uint64_t seed) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "m must be at least 1");
    const Partition& A = attr.partition;
    ProbeResult res;
    res.m = m;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, two_pi);
    int attempts = 0;
    while (res.base_points < samples && attempts < 1000 * samples) {
        ++attempts;
        double u0 = angle(rng), w0 = angle(rng);
        if (attr.margin(u0, w0) < 1e-6) continue;
        auto base = code_window(s, attr, u0, w0, m);
        if (!base) continue;
        ++res.base_points;

        // Forward orbit of w and the cylinder of w's with the same future.
        std::vector<double> ws(m + 1);
        ws[0] = w0;
        for (int k = 0; k < m; ++k) ws[k + 1] = apply(s.T((*base)[m + k]), ws[k]);
        int last = (*base)[2 * m];
        std::optional<Arc> wcyl = Arc{A.at(last), A.at(last + 1)};
        for (int k = m - 1; k >= 0 && wcyl; --k) {
            int i = (*base)[m + k];
            Mobius inv = inverse(s.T(i));
            Arc pulled{apply(inv, wcyl->lo), apply(inv, wcyl->hi)};
            wcyl = component_with(intersect_arcs(pulled, Arc{A.at(i), A.at(i + 1)}), ws[k]);
        }
        if (!wcyl) continue;

        // Backward orbit; the u-section at the far end pushed forward again.
        double bu = u0, bw = w0;
        for (int k = 1; k <= m; ++k) {
            PairStep st = inverse_step(s, attr, bu, bw);
            bu = st.u;
            bw = st.w;
        }
        std::optional<Arc> ucyl = component_with(attr.section(bw), bu);
        if (!ucyl) continue;
        for (int k = 0; k < m; ++k) {
            const Mobius& t = s.T((*base)[k]);
            ucyl = Arc{apply(t, ucyl->lo), apply(t, ucyl->hi)};
        }

        const double fr[] = {0.02, 0.25, 0.5, 0.75, 0.98};
        double ul = ccw(ucyl->lo, ucyl->hi), wl = ccw(wcyl->lo, wcyl->hi);
        for (double fu : fr)
            for (double fw : fr) {
                double u = wrap(ucyl->lo + fu * ul), w = wrap(wcyl->lo + fw * wl);
                auto code = code_window(s, attr, u, w, m);
                if (!code || *code != *base) continue;
                ++res.accepted_pairs;
                res.max_distance =
                    std::max(res.max_distance, std::max(angular_distance(u, u0), angular_distance(w, w0)));
            }
    }
    return res;
}

}  // namespace geocoder
