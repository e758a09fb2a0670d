#include "geocoder/moebius.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

namespace geocoder {

const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::DegenerateMap: return "DegenerateMap";
        case ErrorKind::OrientationMismatch: return "OrientationMismatch";
        case ErrorKind::NumericallySingular: return "NumericallySingular";
        case ErrorKind::NotHyperbolic: return "NotHyperbolic";
        case ErrorKind::IsRotation: return "IsRotation";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::RelationFailure: return "RelationFailure";
        case ErrorKind::NoIntersection: return "NoIntersection";
        case ErrorKind::InvalidPattern: return "InvalidPattern";
        case ErrorKind::FixedPointNotInInterval: return "FixedPointNotInInterval";
        case ErrorKind::NotInAttractor: return "NotInAttractor";
        case ErrorKind::NoFiniteStructure: return "NoFiniteStructure";
        case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
        case ErrorKind::Unclassifiable: return "Unclassifiable";
        case ErrorKind::NotReduced: return "NotReduced";
        case ErrorKind::NotMarkov: return "NotMarkov";
        case ErrorKind::TouchesDiagonal: return "TouchesDiagonal";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

double& tol_slot() {
    static double tol = [] {
        if (const char* env = std::getenv("GEODESIC_CODER_TOL")) {
            char* end = nullptr;
            double v = std::strtod(env, &end);
            if (end != env && v > 0 && std::isfinite(v)) return v;
        }
        return 1e-9;
    }();
    return tol;
}

// Above this |a|^2 the determinant |a|^2-|b|^2 is lost to cancellation.
constexpr double kResolvable = 1e6;

}  // namespace

double angle_tol() { return tol_slot(); }
double matrix_tol() { return 1e-10; }
void set_angle_tol(double tol) { tol_slot() = tol; }

double wrap(double theta) {
    double r = std::fmod(theta, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0;
    return r;
}

double ccw(double a, double b) { return wrap(b - a); }

double angular_distance(double a, double b) {
    double d = ccw(a, b);
    return std::min(d, two_pi - d);
}

bool same_point(double a, double b, double tol) { return angular_distance(a, b) <= tol; }

bool in_arc(double x, double lo, double hi) {
    double len = ccw(lo, hi);
    return ccw(lo, x) < len;
}

bool in_closed_arc(double x, double lo, double hi, double tol) {
    double len = ccw(lo, hi);
    if (len > two_pi - tol) len = 0;  // a numerically empty arc, not the whole circle
    double d = ccw(lo, x);
    if (d <= len + tol) return true;
    return d >= two_pi - tol;
}

double midpoint(double lo, double hi) { return wrap(lo + 0.5 * ccw(lo, hi)); }

double parse_angle(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(c));
    if (s.empty()) throw Error(ErrorKind::InvalidArgument, "empty angle");
    double sign = 1;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        if (s[0] == '-') sign = -1;
        pos = 1;
    }
    double value = 1;
    char op = '*';
    bool any = false;
    while (pos <= s.size()) {
        std::size_t next = s.find_first_of("*/", pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        double v;
        if (tok == "pi") {
            v = pi;
        } else {
            char* end = nullptr;
            v = std::strtod(tok.c_str(), &end);
            if (tok.empty() || end != tok.c_str() + tok.size())
                throw Error(ErrorKind::InvalidArgument, "cannot parse angle '" + text + "'");
        }
        if (op == '*') value *= v;
        else {
            if (v == 0) throw Error(ErrorKind::InvalidArgument, "division by zero in '" + text + "'");
            value /= v;
        }
        any = true;
        if (next == std::string::npos) break;
        op = s[next];
        pos = next + 1;
    }
    if (!any) throw Error(ErrorKind::InvalidArgument, "cannot parse angle '" + text + "'");
    return sign * value;
}

Mobius Mobius::rotation(double alpha) {
    Mobius m;
    m.a = std::polar(1.0, alpha / 2);
    m.b = 0;
    return m;
}

Mobius Mobius::from_matrix(cplx m11, cplx m12, cplx m21, cplx m22) {
    cplx d = m11 * m22 - m12 * m21;
    if (std::abs(d) == 0 || !std::isfinite(std::abs(d)))
        throw Error(ErrorKind::DegenerateMap, "singular matrix");
    cplx s = std::sqrt(d);
    m11 /= s; m12 /= s; m21 /= s; m22 /= s;
    double scale = std::max({std::abs(m11), std::abs(m12), 1.0});
    if (std::abs(m11 - std::conj(m22)) > 1e-6 * scale || std::abs(m12 - std::conj(m21)) > 1e-6 * scale)
        throw Error(ErrorKind::DegenerateMap, "matrix does not preserve the unit circle");
    Mobius m;
    m.a = 0.5 * (m11 + std::conj(m22));
    m.b = 0.5 * (m12 + std::conj(m21));
    double det = m.det();
    if (std::norm(m.a) < kResolvable && det > 0) {
        double r = std::sqrt(det);
        m.a /= r;
        m.b /= r;
    }
    return m;
}

static void check_normalized(const Mobius& m) {
    double na = std::norm(m.a);
    if (!std::isfinite(na)) throw Error(ErrorKind::DegenerateMap, "non-finite entries");
    if (na < kResolvable && std::abs(m.det() - 1.0) > matrix_tol() * std::max(1.0, na) * 1e3)
        throw Error(ErrorKind::DegenerateMap, "determinant drifted from 1");
}

cplx apply_disk(const Mobius& m, cplx z) {
    return (m.a * z + m.b) / (std::conj(m.b) * z + std::conj(m.a));
}

double apply(const Mobius& m, double theta) {
    check_normalized(m);
    cplx v = apply_disk(m, std::polar(1.0, theta));
    return wrap(std::arg(v));
}

Geodesic apply(const Mobius& m, const Geodesic& g) { return {apply(m, g.u), apply(m, g.w)}; }

Mobius compose(const Mobius& m1, const Mobius& m2) {
    Mobius m;
    m.a = m1.a * m2.a + m1.b * std::conj(m2.b);
    m.b = m1.a * m2.b + m1.b * std::conj(m2.a);
    double na = std::norm(m.a);
    if (na < kResolvable) {
        double det = m.det();
        if (det <= 0) throw Error(ErrorKind::DegenerateMap, "composition lost normalization");
        double r = std::sqrt(det);
        m.a /= r;
        m.b /= r;
    }
    return m;
}

Mobius inverse(const Mobius& m) { return {std::conj(m.a), -m.b}; }

bool projectively_equal(const Mobius& m1, const Mobius& m2, double tol) {
    double scale = std::max({1.0, std::abs(m1.a), std::abs(m2.a)});
    double plus = std::max(std::abs(m1.a - m2.a), std::abs(m1.b - m2.b));
    double minus = std::max(std::abs(m1.a + m2.a), std::abs(m1.b + m2.b));
    return std::min(plus, minus) <= tol * scale;
}

double translation_length(const Mobius& m) {
    double t = std::abs(m.trace()) / 2;
    if (t <= 1) throw Error(ErrorKind::NotHyperbolic, "no translation length");
    return 2 * std::acosh(t);
}

Mobius from_boundary_triple(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    double tol = angle_tol();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (angular_distance(p[i], p[j]) <= tol || angular_distance(q[i], q[j]) <= tol)
                throw Error(ErrorKind::NumericallySingular, "triple points coincide");
    bool op = ccw(p[0], p[1]) < ccw(p[0], p[2]);
    bool oq = ccw(q[0], q[1]) < ccw(q[0], q[2]);
    if (op != oq) throw Error(ErrorKind::OrientationMismatch, "triples have opposite cyclic order");

    auto cross = [](const std::array<double, 3>& t) {
        cplx z1 = std::polar(1.0, t[0]), z2 = std::polar(1.0, t[1]), z3 = std::polar(1.0, t[2]);
        // z -> (z - z1)(z2 - z3) / ((z - z3)(z2 - z1))
        return std::array<cplx, 4>{z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1)};
    };
    auto sp = cross(p);
    auto sq = cross(q);
    // adj(Sq) * Sp
    std::array<cplx, 4> adj{sq[3], -sq[1], -sq[2], sq[0]};
    cplx m11 = adj[0] * sp[0] + adj[1] * sp[2];
    cplx m12 = adj[0] * sp[1] + adj[1] * sp[3];
    cplx m21 = adj[2] * sp[0] + adj[3] * sp[2];
    cplx m22 = adj[2] * sp[1] + adj[3] * sp[3];
    Mobius m;
    try {
        m = Mobius::from_matrix(m11, m12, m21, m22);
    } catch (const Error& e) {
        throw Error(ErrorKind::NumericallySingular, e.what());
    }
    for (int i = 0; i < 3; ++i)
        if (angular_distance(apply(m, p[i]), q[i]) > 1e3 * tol)
            throw Error(ErrorKind::NumericallySingular, "triple map does not reproduce its data");
    return m;
}

const char* to_string(TraceClass c) {
    switch (c) {
        case TraceClass::Hyperbolic: return "hyperbolic";
        case TraceClass::Elliptic: return "elliptic";
        case TraceClass::Parabolic: return "parabolic";
        case TraceClass::Identity: return "identity";
    }
    return "unknown";
}

TraceClass trace_class(const Mobius& m) {
    // Re(a)^2 - det = |b|^2 - Im(a)^2, which avoids the cancellation in det.
    double disc = std::norm(m.b) - m.a.imag() * m.a.imag();
    double scale = std::max(1.0, std::norm(m.a));
    double tol = 1e-12 * scale;
    if (disc > tol) return TraceClass::Hyperbolic;
    if (disc < -tol) return TraceClass::Elliptic;
    if (std::abs(m.b) < 1e-9 && std::abs(m.a.imag()) < 1e-9) return TraceClass::Identity;
    return TraceClass::Parabolic;
}

FixedPointPair fixed_points(const Mobius& m) {
    TraceClass c = trace_class(m);
    if (c != TraceClass::Hyperbolic)
        throw Error(ErrorKind::NotHyperbolic, std::string("map is ") + to_string(c));
    double root = std::sqrt(std::norm(m.b) - m.a.imag() * m.a.imag());
    cplx cb = std::conj(m.b);
    cplx z1 = (cplx(0, m.a.imag()) + root) / cb;
    cplx z2 = (cplx(0, m.a.imag()) - root) / cb;
    double d1 = std::abs(cb * z1 + std::conj(m.a));
    double d2 = std::abs(cb * z2 + std::conj(m.a));
    FixedPointPair f;
    f.kind = c;
    f.attracting = wrap(std::arg(d1 > d2 ? z1 : z2));
    f.repelling = wrap(std::arg(d1 > d2 ? z2 : z1));
    return f;
}

double derivative_modulus(const Mobius& m, double theta) {
    double det = std::norm(m.a) < kResolvable ? m.det() : 1.0;
    return det / std::norm(std::conj(m.b) * std::polar(1.0, theta) + std::conj(m.a));
}

Circle isometric_circle(const Mobius& m) {
    if (std::abs(m.b) < 1e-14) throw Error(ErrorKind::IsRotation, "rotation has no isometric circle");
    return {-std::conj(m.a) / std::conj(m.b), 1.0 / std::abs(m.b)};
}

}  // namespace geocoder
