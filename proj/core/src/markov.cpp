#include "geocoder/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace geocoder {

const char* to_string(WitnessKind k) {
    switch (k) {
        case WitnessKind::A: return "A";
        case WitnessKind::B: return "B";
        case WitnessKind::C: return "C";
        case WitnessKind::None: return "none";
    }
    return "none";
}

std::vector<MarkovWitness> markov_condition(const Surface& s, const Partition& A, const CycleReport& report) {
    std::vector<MarkovWitness> out;
    const double tol = 10 * angle_tol();
    for (int i = 1; i <= s.n(); ++i) {
        double x = report.at(i).cycle_end;
        MarkovWitness best{i, 0, WitnessKind::None, two_pi};
        for (WitnessKind k : {WitnessKind::A, WitnessKind::B, WitnessKind::C})
            for (int j = 1; j <= s.n(); ++j) {
                double y = k == WitnessKind::A ? A.at(j) : k == WitnessKind::B ? report.at(j).B : report.at(j).C;
                double d = angular_distance(x, y);
                if (d < best.error - 1e-15) best = {i, j, k, d};
            }
        if (best.error > tol) best.kind = WitnessKind::None;
        out.push_back(best);
    }
    return out;
}

bool all_witnessed(const std::vector<MarkovWitness>& w) {
    return std::all_of(w.begin(), w.end(), [](const MarkovWitness& x) { return x.kind != WitnessKind::None; });
}

FinePartition fine_partition(const Surface& s, const Partition& A, const Attractor& attr) {
    if (attr.provenance != Provenance::ClosedForm || attr.rects.size() != static_cast<std::size_t>(3 * s.n()))
        throw Error(ErrorKind::InvalidArgument, "the fine partition needs the closed-form attractor");
    FinePartition f;
    f.rects = attr.rects;
    for (int i = 1; i <= s.n(); ++i) {
        double c = ccw(A.at(i), attr.C[i - 1]), b = ccw(A.at(i), attr.B[i - 1]);
        f.c_first.push_back(c <= b + angle_tol());
        const Rect& mid = f.at(i, 2);
        if (ccw(mid.w_lo, mid.w_hi) < angle_tol() || ccw(mid.w_lo, mid.w_hi) > two_pi - angle_tol())
            f.degenerate.push_back(i);
    }
    return f;
}

std::string TransitionMatrix::name(int a) const { return std::to_string(strip[a]) + "_" + std::to_string(piece[a]); }

Rect image(const Surface& s, const Rect& r) {
    const Mobius& t = s.T(r.strip);
    return {apply(t, r.u_lo), apply(t, r.u_hi), apply(t, r.w_lo), apply(t, r.w_hi), r.strip, r.piece};
}

namespace {

std::vector<Arc> thick(std::vector<Arc> arcs, double eps) {
    arcs.erase(std::remove_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return arc_length(a) <= eps; }),
               arcs.end());
    return arcs;
}

bool empty_rect(const Rect& r, double eps) {
    double lu = ccw(r.u_lo, r.u_hi), lw = ccw(r.w_lo, r.w_hi);
    return lu <= eps || lw <= eps || lw >= two_pi - eps;
}

}  // namespace

TransitionMatrix transition_matrix(const Surface& s, const FinePartition& fine) {
    TransitionMatrix tm;
    const int N = static_cast<int>(fine.rects.size());
    tm.size = N;
    tm.m.assign(static_cast<std::size_t>(N) * N, 0);
    for (const Rect& r : fine.rects) {
        tm.strip.push_back(r.strip);
        tm.piece.push_back(r.piece);
        tm.active.push_back(!empty_rect(r, tm.area_threshold));
    }
    const double eps = tm.area_threshold;
    for (int a = 0; a < N; ++a) {
        const Rect& src = fine.rects[a];
        if (!tm.active[a]) continue;
        Rect img = image(s, src);
        Arc iu{img.u_lo, img.u_hi}, iw{img.w_lo, img.w_hi};
        for (int b = 0; b < N; ++b) {
            const Rect& dst = fine.rects[b];
            if (!tm.active[b]) continue;
            Arc du{dst.u_lo, dst.u_hi}, dw{dst.w_lo, dst.w_hi};
            auto cu = thick(intersect_arcs(iu, du), eps);
            auto cw = thick(intersect_arcs(iw, dw), eps);
            if (cu.empty() || cw.empty()) continue;
            bool transversal = cu.size() == 1 && cw.size() == 1 &&
                               std::abs(arc_length(cu[0]) - arc_length(iu)) <= eps &&
                               std::abs(arc_length(cw[0]) - arc_length(dw)) <= eps;
            if (!transversal)
                throw Error(ErrorKind::NotMarkov, "F(R_" + tm.name(a) + ") meets R_" + tm.name(b) +
                                                      " without crossing it transversally");
            tm.m[static_cast<std::size_t>(a) * N + b] = 1;
        }
    }
    return tm;
}

double perron_eigenvalue(const TransitionMatrix& tm, int max_iter, double tol) {
    // Power iteration on M + I, which is aperiodic whenever M is irreducible.
    const int N = tm.size;
    std::vector<double> x(N, 1.0), y(N);
    double lambda = 0;
    for (int it = 0; it < max_iter; ++it) {
        for (int a = 0; a < N; ++a) {
            double acc = x[a];
            for (int b = 0; b < N; ++b)
                if (tm.at(a, b)) acc += x[b];
            y[a] = acc;
        }
        double norm = *std::max_element(y.begin(), y.end());
        if (norm == 0) return 0;
        for (double& v : y) v /= norm;
        double next = norm - 1.0;
        x.swap(y);
        if (std::abs(next - lambda) < tol * std::max(1.0, next)) return next;
        lambda = next;
    }
    return lambda;
}

SoficGraph sofic_presentation(const Surface& s, const TransitionMatrix& tm) {
    SoficGraph g;
    g.genus = s.genus();
    for (int a = 0; a < tm.size; ++a) {
        g.nodes.push_back(tm.name(a));
        g.node_label.push_back(s.sigma(tm.strip[a]));
    }
    for (int a = 0; a < tm.size; ++a)
        for (int b = 0; b < tm.size; ++b)
            if (tm.at(a, b)) g.edges.push_back({a, b, g.node_label[b]});
    return g;
}

bool accepts_periodic(const SoficGraph& g, const std::vector<int>& word) {
    if (word.empty()) return false;
    const int N = static_cast<int>(g.nodes.size());
    const int L = static_cast<int>(word.size());
    // State (node, t): the path sits in node and has just emitted word[t].
    auto id = [&](int node, int t) { return node * L + t; };
    std::vector<std::vector<int>> out(N * L), in(N * L);
    for (const SoficEdge& e : g.edges)
        for (int t = 0; t < L; ++t) {
            if (g.node_label[e.from] != word[t] || e.label != word[(t + 1) % L]) continue;
            out[id(e.from, t)].push_back(id(e.to, (t + 1) % L));
            in[id(e.to, (t + 1) % L)].push_back(id(e.from, t));
        }
    // Strip states without a successor or predecessor; a survivor lies on a cycle.
    std::vector<int> outdeg(N * L), indeg(N * L);
    std::vector<bool> alive(N * L, true);
    std::vector<int> queue;
    for (int v = 0; v < N * L; ++v) {
        outdeg[v] = static_cast<int>(out[v].size());
        indeg[v] = static_cast<int>(in[v].size());
        if (outdeg[v] == 0 || indeg[v] == 0) {
            alive[v] = false;
            queue.push_back(v);
        }
    }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int x : out[v])
            if (alive[x] && --indeg[x] == 0) {
                alive[x] = false;
                queue.push_back(x);
            }
        for (int x : in[v])
            if (alive[x] && --outdeg[x] == 0) {
                alive[x] = false;
                queue.push_back(x);
            }
    }
    return std::any_of(alive.begin(), alive.end(), [](bool b) { return b; });
}

std::string to_dot(const SoficGraph& g) {
    std::ostringstream os;
    os << "digraph sofic {\n  rankdir=LR;\n";
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
        os << "  \"" << g.nodes[a] << "\" [label=\"" << g.nodes[a] << "\"];\n";
    for (const SoficEdge& e : g.edges)
        os << "  \"" << g.nodes[e.from] << "\" -> \"" << g.nodes[e.to] << "\" [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace geocoder
