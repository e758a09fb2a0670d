#include "geocoder/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace geocoder {

namespace {

double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

cplx klein_to_poincare(cplx k) {
    double r2 = std::min(1.0, std::norm(k));
    return k / (1.0 + std::sqrt(1.0 - r2));
}

}  // namespace

int Surface::sigma(int i) const {
    int k = wrap_index(i);
    return (k % 2 != 0) ? wrap_index(4 * genus_ - k) : wrap_index(2 - k);
}

double Surface::side_direction(int i) const { return wrap(phase_ + two_pi * (slot(i)) / n_ + pi / n_); }

Surface Surface::build(int genus) {
    if (genus < 2) throw Error(ErrorKind::InvalidArgument, "genus must be at least 2");
    Surface s;
    s.genus_ = genus;
    s.n_ = 8 * genus - 4;
    const int n = s.n_;
    const double half = pi / n;
    s.phase_ = -pi / 2 - half;

    // cosh R = cot(pi/n) for a right-angled regular n-gon; Euclidean radius tanh(R/2).
    double R = std::acosh(1.0 / std::tan(half));
    double rho = std::tanh(R / 2);
    s.vertex_radius_ = rho;
    s.center_distance_ = (1 + rho * rho) / (2 * rho * std::cos(half));
    s.circle_radius_ = std::sqrt(s.center_distance_ * s.center_distance_ - 1);
    double alpha = std::acos(1.0 / s.center_distance_);

    s.P_.resize(n);
    s.Q_.resize(n);
    s.M_.resize(n);
    s.V_.resize(n);
    s.K_.resize(n);
    for (int k = 1; k <= n; ++k) {
        double mk = s.phase_ + two_pi * (k - 1) / n;
        s.M_[k - 1] = wrap(mk);
        s.V_[k - 1] = std::polar(rho, mk);
        s.K_[k - 1] = 2.0 * s.V_[k - 1] / (1.0 + rho * rho);
        s.P_[k - 1] = wrap(mk + half - alpha);
        s.Q_[k - 1] = wrap(mk - half + alpha);
    }

    s.T_.resize(n);
    for (int i = 1; i <= n; ++i) {
        int sg = s.sigma(i);
        s.T_[i - 1] = from_boundary_triple({s.P(i - 1), s.P(i), s.Q(i + 1)},
                                           {s.P(sg + 1), s.Q(sg + 1), s.P(sg)});
    }
    s.U_.resize(n);
    for (int i = 1; i <= n; ++i) s.U_[i - 1] = compose(s.T(s.sigma(i)), s.T(s.tau(i - 1)));

    RelationReport rep = relation_report(s);
    if (rep.max() > 1e-8)
        throw Error(ErrorKind::RelationFailure, "group relations fail, max error " + std::to_string(rep.max()));
    return s;
}

Crossing Surface::cross(const Geodesic& g) const {
    cplx a = std::polar(1.0, g.u);
    cplx b = std::polar(1.0, g.w);
    cplx d = b - a;
    double t_in = 0, t_out = 1;
    std::vector<std::pair<int, double>> enter, leave;
    Crossing c;
    for (int k = 0; k < n_; ++k) {
        cplx p0 = K_[k];
        cplx e = K_[(k + 1) % n_] - p0;
        double num = cross2(e, a - p0);
        double den = cross2(e, d);
        if (std::abs(den) < 1e-300) {
            if (num < 0) {
                c.gap = std::max(c.gap, -num);
                return c;
            }
            continue;
        }
        double t = -num / den;
        if (den > 0) {
            enter.push_back({k + 1, t});
            t_in = std::max(t_in, t);
        } else {
            leave.push_back({k + 1, t});
            t_out = std::min(t_out, t);
        }
    }
    const double tie = 1e-10;
    if (t_in > t_out + angle_tol()) {
        c.gap = t_in - t_out;
        return c;
    }
    auto pick = [&](const std::vector<std::pair<int, double>>& cand, double target, bool exiting) {
        std::vector<int> near;
        for (auto& [k, t] : cand)
            if (std::abs(t - target) <= tie) near.push_back(k);
        if (near.size() == 1) return near[0];
        // Vertex V_k belongs to side k: the exit through V_k is side k, the
        // entry through V_{k+1} is side k.
        for (int k : near) {
            int other = exiting ? wrap_index(k - 1) : wrap_index(k + 1);
            if (std::find(near.begin(), near.end(), other) != near.end()) return k;
        }
        return near.empty() ? 0 : near[0];
    };
    c.hit = true;
    c.entry_side = pick(enter, t_in, false);
    c.exit_side = pick(leave, t_out, true);
    if (t_in > t_out) t_in = t_out = 0.5 * (t_in + t_out);
    c.entry = klein_to_poincare(a + t_in * d);
    c.exit = klein_to_poincare(a + t_out * d);
    return c;
}

int index_map(const Surface& s, char which, int i) {
    if (i < 1 || i > s.n())
        throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i) + " outside 1.." + std::to_string(s.n()));
    switch (which) {
        case 's': return s.sigma(i);
        case 'r': return s.rho(i);
        case 't': return s.theta(i);
        case 'u': return s.tau(i);
    }
    throw Error(ErrorKind::InvalidArgument, std::string("unknown index map ") + which);
}

double RelationReport::max() const {
    return std::max({side_pairing, vertex_cycle, four_fold, t_images, corner_forms, corner_inverse, corner_vertex});
}

RelationReport relation_report(const Surface& s) {
    RelationReport r;
    auto id_err = [](const Mobius& m) {
        return std::min(std::max(std::abs(m.a - 1.0), std::abs(m.b)), std::max(std::abs(m.a + 1.0), std::abs(m.b)));
    };
    auto mat_err = [](const Mobius& x, const Mobius& y) {
        return std::min(std::max(std::abs(x.a - y.a), std::abs(x.b - y.b)),
                        std::max(std::abs(x.a + y.a), std::abs(x.b + y.b)));
    };
    for (int i = 1; i <= s.n(); ++i) {
        const Mobius& t = s.T(i);
        int sg = s.sigma(i);
        r.side_pairing = std::max(r.side_pairing, id_err(compose(s.T(sg), t)));
        r.vertex_cycle = std::max(r.vertex_cycle, std::abs(apply_disk(t, s.V(i)) - s.V(s.rho(i))));
        int r1 = s.rho(i), r2 = s.rho(r1), r3 = s.rho(r2);
        Mobius four = compose(s.T(r3), compose(s.T(r2), compose(s.T(r1), t)));
        r.four_fold = std::max(r.four_fold, id_err(four));

        double src[6] = {s.P(i - 1), s.P(i), s.Q(i), s.P(i + 1), s.Q(i + 1), s.Q(i + 2)};
        double dst[6] = {s.P(sg + 1), s.Q(sg + 1), s.Q(sg + 2), s.P(sg - 1), s.P(sg), s.Q(sg)};
        for (int k = 0; k < 6; ++k) r.t_images = std::max(r.t_images, angular_distance(apply(t, src[k]), dst[k]));

        Mobius alt = compose(s.T(s.sigma(i - 1)), s.T(s.tau(i)));
        r.corner_forms = std::max(r.corner_forms, mat_err(s.U(i), alt));
        r.corner_inverse = std::max(r.corner_inverse, mat_err(inverse(s.U(i)), s.U(s.tau(i))));
        r.corner_vertex = std::max(r.corner_vertex, std::abs(apply_disk(s.U(i), s.V(s.tau(i))) - s.V(i)));
    }
    return r;
}

bool meets_polygon(const Surface& s, const Geodesic& g) { return s.cross(g).hit; }

int exit_side(const Surface& s, const Geodesic& g) {
    Crossing c = s.cross(g);
    if (!c.hit) throw Error(ErrorKind::NoIntersection, "geodesic misses the fundamental polygon");
    return c.exit_side;
}

int entry_side(const Surface& s, const Geodesic& g) {
    Crossing c = s.cross(g);
    if (!c.hit) throw Error(ErrorKind::NoIntersection, "geodesic misses the fundamental polygon");
    return c.entry_side;
}

Mobius word_product(const Surface& s, const std::vector<int>& letters) {
    Mobius m;
    for (int k : letters) {
        if (k < 1 || k > s.n()) throw Error(ErrorKind::IndexOutOfRange, "letter " + std::to_string(k));
        m = compose(m, s.T(k));
    }
    return m;
}

Geodesic axis(const Mobius& m) {
    FixedPointPair f = fixed_points(m);
    return {f.repelling, f.attracting};
}

Geodesic axis(const Surface& s, const std::vector<int>& letters) {
    if (letters.empty()) throw Error(ErrorKind::InvalidArgument, "empty word");
    return axis(word_product(s, letters));
}

}  // namespace geocoder
