#include "geocoder/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geocoder {

const char* to_string(PartitionKind k) {
    switch (k) {
        case PartitionKind::Midpoints: return "midpoints";
        case PartitionKind::ProductFixedPoints: return "product";
        case PartitionKind::Mixed: return "mixed";
        case PartitionKind::EndpointsP: return "endpoints:P";
        case PartitionKind::EndpointsQ: return "endpoints:Q";
        case PartitionKind::EndpointsPattern: return "endpoints";
        case PartitionKind::Custom: return "custom";
    }
    return "unknown";
}

bool Partition::endpoints() const {
    return kind == PartitionKind::EndpointsP || kind == PartitionKind::EndpointsQ ||
           kind == PartitionKind::EndpointsPattern;
}

namespace {

void validate(const Surface& s, const Partition& p) {
    if (p.n() != s.n())
        throw Error(ErrorKind::InvalidArgument, "partition needs " + std::to_string(s.n()) + " points");
    double tol = angle_tol();
    bool closed = p.endpoints();
    for (int i = 1; i <= s.n(); ++i) {
        double x = p.at(i);
        bool inside = closed ? in_closed_arc(x, s.P(i), s.Q(i), tol)
                             : in_closed_arc(x, s.P(i), s.Q(i), 0) && !same_point(x, s.P(i)) && !same_point(x, s.Q(i));
        if (!inside) {
            std::ostringstream os;
            os << "A_" << i << " = " << x << " lies outside " << (closed ? "[" : "(") << "P_" << i << ", Q_" << i
               << (closed ? "]" : ")");
            throw Error(ErrorKind::InvalidArgument, os.str());
        }
    }
}

double product_fixed_point(const Surface& s, int i) {
    double x = s.M(i);
    for (int it = 0; it < 200; ++it) {
        double prev = x;
        for (int k = i + s.n() - 1; k >= i; --k) x = apply(s.U(k), x);
        if (angular_distance(prev, x) < 1e-15) break;
    }
    return x;
}

}  // namespace

Partition make_partition(const Surface& s, PartitionKind kind, const std::string& pattern) {
    Partition p;
    p.kind = kind;
    p.label = to_string(kind);
    const int n = s.n();
    p.A.resize(n);
    switch (kind) {
        case PartitionKind::Midpoints:
            for (int i = 1; i <= n; ++i) p.A[i - 1] = s.M(i);
            break;
        case PartitionKind::ProductFixedPoints:
            for (int i = 1; i <= n; ++i) {
                double x = product_fixed_point(s, i);
                CycleInterval iv = short_cycle_interval(s, i);
                if (!in_closed_arc(x, iv.b, iv.a, angle_tol()))
                    throw Error(ErrorKind::FixedPointNotInInterval, "A_" + std::to_string(i) + " outside [b_i, a_i]");
                p.A[i - 1] = x;
            }
            break;
        case PartitionKind::Mixed:
            for (int i = 1; i <= n; ++i) p.A[i - 1] = (i % 2 != 0) ? s.M(i) : apply(s.U(i), s.M(i + 1));
            break;
        case PartitionKind::EndpointsP:
            for (int i = 1; i <= n; ++i) p.A[i - 1] = s.P(i);
            break;
        case PartitionKind::EndpointsQ:
            for (int i = 1; i <= n; ++i) p.A[i - 1] = s.Q(i);
            break;
        case PartitionKind::EndpointsPattern: {
            if (pattern.empty() || n % static_cast<int>(pattern.size()) != 0)
                throw Error(ErrorKind::InvalidPattern, "pattern length must divide " + std::to_string(n));
            for (int i = 1; i <= n; ++i) {
                char c = pattern[(i - 1) % pattern.size()];
                if (c == 'P' || c == 'p') p.A[i - 1] = s.P(i);
                else if (c == 'Q' || c == 'q') p.A[i - 1] = s.Q(i);
                else throw Error(ErrorKind::InvalidPattern, "pattern letters must be P or Q");
            }
            p.label = "endpoints:" + pattern;
            break;
        }
        case PartitionKind::Custom:
            throw Error(ErrorKind::InvalidArgument, "custom partitions need explicit points");
    }
    validate(s, p);
    return p;
}

Partition custom_partition(const Surface& s, std::vector<double> A, const std::string& label) {
    Partition p;
    p.kind = PartitionKind::Custom;
    p.label = label;
    for (double& x : A) x = wrap(x);
    p.A = std::move(A);
    validate(s, p);
    return p;
}

Partition parse_partition(const Surface& s, const std::string& spec) {
    if (spec == "midpoints") return make_partition(s, PartitionKind::Midpoints);
    if (spec == "product" || spec == "product-fixed-points") return make_partition(s, PartitionKind::ProductFixedPoints);
    if (spec == "mixed") return make_partition(s, PartitionKind::Mixed);
    if (spec.rfind("endpoints:", 0) == 0) {
        std::string pat = spec.substr(10);
        if (pat == "P") return make_partition(s, PartitionKind::EndpointsP);
        if (pat == "Q") return make_partition(s, PartitionKind::EndpointsQ);
        return make_partition(s, PartitionKind::EndpointsPattern, pat);
    }
    if (spec.rfind("custom:", 0) == 0) {
        std::vector<double> A;
        std::stringstream ss(spec.substr(7));
        std::string item;
        while (std::getline(ss, item, ',')) A.push_back(parse_angle(item));
        return custom_partition(s, std::move(A));
    }
    throw Error(ErrorKind::InvalidArgument, "unknown partition '" + spec + "'");
}

CycleInterval short_cycle_interval(const Surface& s, int i) {
    double a1 = apply(s.T(s.sigma(i)), s.P(s.rho(i) + 1));
    double a2 = apply(s.U(i), s.P(s.tau(i) - 2));
    double b1 = apply(s.T(s.sigma(i - 1)), s.Q(s.theta(i - 1)));
    double b2 = apply(s.U(i), s.Q(s.tau(i) + 2));
    if (angular_distance(a1, a2) > 1e-8 || angular_distance(b1, b2) > 1e-8)
        throw Error(ErrorKind::RelationFailure, "the two forms of the short cycle interval disagree");
    return {b1, a1};
}

int strip_of(const Partition& A, double x) {
    const int n = A.n();
    // A point equal to A_i up to tolerance belongs to [A_i, A_{i+1}).
    for (int i = 1; i <= n; ++i)
        if (same_point(x, A.at(i))) return i;
    for (int i = 1; i <= n; ++i)
        if (in_arc(x, A.at(i), A.at(i + 1))) return i;
    // Rounding can leave x a hair below A_1 after wrap; take the nearest start.
    int best = 1;
    double bd = 1e9;
    for (int i = 1; i <= n; ++i) {
        double d = angular_distance(x, A.at(i));
        if (d < bd) bd = d, best = i;
    }
    return best;
}

CircleStep boundary_step(const Surface& s, const Partition& A, double x) {
    int i = strip_of(A, x);
    return {apply(s.T(i), x), i};
}

bool CycleReport::all_short() const {
    return std::all_of(entries.begin(), entries.end(), [](const CycleEntry& e) { return e.short_cycle; });
}

CycleReport cycle_report(const Surface& s, const Partition& A) {
    CycleReport r;
    const int n = s.n();
    r.entries.resize(n);
    for (int i = 1; i <= n; ++i) {
        CycleEntry& e = r.entries[i - 1];
        int sm = s.sigma(i - 1), sp = s.sigma(i + 1);
        e.B = apply(s.T(sm), A.at(sm));
        e.C = apply(s.T(sp), A.at(sp + 1));
        e.cycle_end = apply(inverse(s.U(i)), A.at(i));
        double x1 = boundary_step(s, A, apply(s.T(i), A.at(i))).x;
        double x2 = boundary_step(s, A, apply(s.T(i - 1), A.at(i))).x;
        e.mismatch = angular_distance(x1, x2);
        e.short_cycle = e.mismatch <= 1e-8;
        e.interval = short_cycle_interval(s, i);
    }
    return r;
}

double arc_margin(const Arc& arc, double u) {
    double len = ccw(arc.lo, arc.hi);
    double d = ccw(arc.lo, u);
    if (d <= len) return std::min(d, len - d);
    return -std::min(d - len, two_pi - d);
}

std::vector<Arc> intersect_arcs(const Arc& x, const Arc& y) {
    std::vector<Arc> out;
    double lx = ccw(x.lo, x.hi);
    double c = ccw(x.lo, y.lo);
    double ly = ccw(y.lo, y.hi);
    for (double shift : {0.0, -two_pi}) {
        double a = std::max(0.0, c + shift), b = std::min(lx, c + shift + ly);
        if (b > a) out.push_back({wrap(x.lo + a), wrap(x.lo + b)});
    }
    return out;
}

std::vector<Arc> Attractor::section(double w) const {
    std::vector<Arc> out;
    const double tol = angle_tol();
    if (provenance == Provenance::Numeric) {
        for (const Rect& r : rects)
            if (in_closed_arc(w, r.w_lo, r.w_hi, tol)) out.push_back({r.u_lo, r.u_hi});
        return out;
    }
    int i = strip_of(partition, w);
    for (int strip : {i, partition.n() > 0 ? (i == 1 ? partition.n() : i - 1) : i, i == partition.n() ? 1 : i + 1}) {
        for (int k = 0; k < 3; ++k) {
            const Rect& r = rects[3 * (strip - 1) + k];
            if (in_closed_arc(w, r.w_lo, r.w_hi, tol)) out.push_back({r.u_lo, r.u_hi});
        }
    }
    return out;
}

double Attractor::margin(double u, double w) const {
    double best = -two_pi;
    for (const Arc& a : section(w)) best = std::max(best, arc_margin(a, u));
    return best;
}

bool Attractor::contains(double u, double w, double tol) const {
    return margin(u, w) >= -tol;
}

Attractor closed_form_attractor(const Surface& s, const Partition& A, const CycleReport& report) {
    Attractor at;
    at.provenance = Provenance::ClosedForm;
    at.partition = A;
    const int n = s.n();
    at.B.resize(n);
    at.C.resize(n);
    for (int i = 1; i <= n; ++i) {
        const CycleEntry& e = report.at(i);
        double a0 = A.at(i), a1 = A.at(i + 1);
        double B = same_point(e.B, a0) ? a0 : e.B, C = same_point(e.C, a0) ? a0 : e.C;
        if (same_point(B, C)) B = C;
        at.B[i - 1] = B;
        at.C[i - 1] = C;
        double lo1 = s.Q(i + 1), lo2 = s.Q(i + 2), hi1 = s.P(i - 1), hi2 = s.P(i);
        bool c_first = ccw(a0, C) <= ccw(a0, B) + angle_tol();
        if (c_first) {
            at.rects.push_back({lo1, hi1, a0, C, i, 1});
            at.rects.push_back({lo2, hi1, C, B, i, 2});
            at.rects.push_back({lo2, hi2, B, a1, i, 3});
        } else {
            at.rects.push_back({lo1, hi1, a0, B, i, 1});
            at.rects.push_back({lo1, hi2, B, C, i, 2});
            at.rects.push_back({lo2, hi2, C, a1, i, 3});
        }
    }
    return at;
}

namespace {

struct Level {
    double lo = 0, hi = 0;  // w in [lo, hi)
    int strip = 0;
    std::vector<Arc> arcs;
};

// Sorted disjoint union; pieces no longer than eps vanish.
std::vector<Arc> normalize(const std::vector<Arc>& arcs, double eps) {
    std::vector<std::pair<double, double>> iv;
    for (const Arc& a : arcs) {
        double len = arc_length(a);
        if (len <= eps) continue;
        double lo = wrap(a.lo);
        if (lo + len <= two_pi) {
            iv.push_back({lo, lo + len});
        } else {
            iv.push_back({lo, two_pi});
            iv.push_back({0, lo + len - two_pi});
        }
    }
    std::sort(iv.begin(), iv.end());
    std::vector<std::pair<double, double>> m;
    for (auto x : iv) {
        if (!m.empty() && x.first <= m.back().second + eps)
            m.back().second = std::max(m.back().second, x.second);
        else
            m.push_back(x);
    }
    if (m.size() > 1 && m.front().first <= eps && m.back().second >= two_pi - eps) {
        m.front().first = m.back().first - two_pi;
        m.pop_back();
    }
    std::vector<Arc> out;
    for (auto [a, b] : m) {
        if (b - a >= two_pi - eps) return {{0, two_pi - 1e-15}};
        out.push_back({wrap(a), wrap(b)});
    }
    return out;
}

std::vector<Arc> intersect_all(const std::vector<Arc>& x, const std::vector<Arc>& y, double eps) {
    std::vector<Arc> out;
    for (const Arc& a : x)
        for (const Arc& b : y)
            for (const Arc& c : intersect_arcs(a, b)) out.push_back(c);
    return normalize(out, eps);
}

bool same_arcs(const std::vector<Arc>& x, const std::vector<Arc>& y, double eps) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (angular_distance(x[k].lo, y[k].lo) > eps || angular_distance(x[k].hi, y[k].hi) > eps) return false;
    return true;
}

}  // namespace

Attractor numeric_attractor(const Surface& s, const Partition& A, int max_steps, int max_levels) {
    const int n = s.n();
    const double eps = angle_tol();
    std::vector<double> vertices;
    for (int i = 1; i <= n; ++i) {
        vertices.push_back(s.P(i));
        vertices.push_back(s.Q(i));
    }
    auto snap = [&](double x) {
        for (double v : vertices)
            if (angular_distance(x, v) <= eps) return v;
        return x;
    };
    std::vector<Level> cur;
    for (int i = 1; i <= n; ++i) cur.push_back({A.at(i), A.at(i + 1), i, {{s.Q(i + 1), s.P(i)}}});
    auto by_lo = [](const Level& a, const Level& b) { return wrap(a.lo) < wrap(b.lo); };
    std::sort(cur.begin(), cur.end(), by_lo);

    int step = 0;
    bool stable = false;
    for (; step < max_steps && !stable; ++step) {
        std::vector<Level> img;
        std::vector<double> cuts;
        for (int i = 1; i <= n; ++i) cuts.push_back(wrap(A.at(i)));
        for (const Level& lv : cur) {
            const Mobius& t = s.T(lv.strip);
            Level im{apply(t, lv.lo), apply(t, lv.hi), 0, {}};
            for (const Arc& a : lv.arcs) im.arcs.push_back({snap(apply(t, a.lo)), snap(apply(t, a.hi))});
            cuts.push_back(wrap(lv.lo));
            cuts.push_back(wrap(im.lo));
            cuts.push_back(wrap(im.hi));
            img.push_back(std::move(im));
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> pts;
        for (double c : cuts) {
            c = wrap(snap(c));
            for (int i = 1; i <= n; ++i)
                if (angular_distance(c, A.at(i)) <= eps) c = wrap(A.at(i));
            if (pts.empty() || c - pts.back() > eps)
                pts.push_back(c);
            else if (std::any_of(A.A.begin(), A.A.end(), [&](double a) { return wrap(a) == c; }))
                pts.back() = c;
        }
        if (pts.size() > 1 && pts.back() > two_pi - eps) pts.pop_back();

        std::vector<double> los;
        for (const Level& lv : cur) los.push_back(wrap(lv.lo));
        std::vector<Level> next;
        for (std::size_t k = 0; k < pts.size(); ++k) {
            double lo = pts[k], hi = pts[(k + 1) % pts.size()];
            double m = midpoint(lo, hi);
            std::vector<Arc> forward;
            for (const Level& im : img)
                if (in_arc(m, im.lo, im.hi)) forward.insert(forward.end(), im.arcs.begin(), im.arcs.end());
            auto it = std::upper_bound(los.begin(), los.end(), m);
            const Level& old = it == los.begin() ? cur.back() : cur[static_cast<std::size_t>(it - los.begin()) - 1];
            Level lv{lo, hi, strip_of(A, m), intersect_all(normalize(forward, eps), old.arcs, eps)};
            if (!next.empty() && next.back().strip == lv.strip && same_arcs(next.back().arcs, lv.arcs, eps))
                next.back().hi = hi;
            else
                next.push_back(std::move(lv));
        }
        if (next.size() > 1 && next.back().strip == next.front().strip &&
            same_arcs(next.back().arcs, next.front().arcs, eps)) {
            next.back().hi = next.front().hi;
            next.erase(next.begin());
        }
        if (static_cast<int>(next.size()) > max_levels)
            throw Error(ErrorKind::NoFiniteStructure, "attractor levels keep multiplying");
        stable = next.size() == cur.size();
        for (std::size_t k = 0; stable && k < next.size(); ++k)
            stable = angular_distance(next[k].lo, cur[k].lo) <= eps && angular_distance(next[k].hi, cur[k].hi) <= eps &&
                     same_arcs(next[k].arcs, cur[k].arcs, eps);
        cur = std::move(next);
    }
    if (!stable) throw Error(ErrorKind::NoFiniteStructure, "attractor iteration did not settle");

    Attractor at;
    at.provenance = Provenance::Numeric;
    at.partition = A;
    at.iterations = step;
    for (const Level& lv : cur)
        for (std::size_t k = 0; k < lv.arcs.size(); ++k)
            at.rects.push_back({lv.arcs[k].lo, lv.arcs[k].hi, wrap(lv.lo), wrap(lv.hi), lv.strip, static_cast<int>(k) + 1});
    return at;
}

Attractor attractor(const Surface& s, const Partition& A) {
    if (!A.endpoints()) {
        CycleReport rep = cycle_report(s, A);
        if (rep.all_short()) return closed_form_attractor(s, A, rep);
    }
    return numeric_attractor(s, A);
}

std::vector<std::uint8_t> rasterize(const Attractor& attr, int N) {
    std::vector<std::uint8_t> g(static_cast<std::size_t>(N) * N, 0);
    const double h = two_pi / N;
    for (int r = 0; r < N; ++r) {
        double w = (r + 0.5) * h;
        for (int c = 0; c < N; ++c) g[static_cast<std::size_t>(r) * N + c] = attr.contains((c + 0.5) * h, w, 0);
    }
    return g;
}

bool is_reduced(const Attractor& attr, double u, double w) {
    if (same_point(u, w)) return false;
    return attr.contains(u, w);
}

PairStep natural_extension_step(const Surface& s, const Partition& A, double u, double w) {
    int i = strip_of(A, w);
    const Mobius& t = s.T(i);
    return {apply(t, u), apply(t, w), i};
}

PairStep inverse_step(const Surface& s, const Attractor& attr, double u, double w) {
    const Partition& A = attr.partition;
    const double tol = angle_tol();
    PairStep best;
    double best_margin = -1e9;
    for (int j = 1; j <= s.n(); ++j) {
        const Mobius& inv = s.T(s.sigma(j));
        double wp = apply(inv, w);
        if (!in_closed_arc(wp, A.at(j), A.at(j + 1), tol)) continue;
        double up = apply(inv, u);
        double m = attr.margin(up, wp);
        if (m > best_margin) {
            best_margin = m;
            best = {up, wp, j};
        }
    }
    if (best.i == 0 || best_margin < -100 * tol)
        throw Error(ErrorKind::NotInAttractor, "no preimage inside the attractor");
    return best;
}

Reduction reduce(const Surface& s, const Attractor& attr, double u, double w, int max_steps) {
    if (same_point(u, w)) throw Error(ErrorKind::InvalidArgument, "u and w coincide");
    Reduction r{u, w, {}};
    for (int k = 0; k < max_steps; ++k) {
        if (attr.contains(r.u, r.w)) return r;
        PairStep st = natural_extension_step(s, attr.partition, r.u, r.w);
        r.u = st.u;
        r.w = st.w;
        r.applied.push_back(st.i);
    }
    if (attr.contains(r.u, r.w)) return r;
    std::ostringstream os;
    os << "not reduced after " << max_steps << " steps; last (u, w) = (" << r.u << ", " << r.w << ")";
    throw Error(ErrorKind::MaxStepsExceeded, os.str());
}

}  // namespace geocoder
