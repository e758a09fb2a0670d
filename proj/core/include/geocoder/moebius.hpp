#pragma once

#include <array>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace geocoder {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class ErrorKind {
    DegenerateMap,
    OrientationMismatch,
    NumericallySingular,
    NotHyperbolic,
    IsRotation,
    IndexOutOfRange,
    RelationFailure,
    NoIntersection,
    InvalidPattern,
    FixedPointNotInInterval,
    NotInAttractor,
    NoFiniteStructure,
    MaxStepsExceeded,
    Unclassifiable,
    NotReduced,
    NotMarkov,
    TouchesDiagonal,
    InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind k, const std::string& what)
        : std::runtime_error(std::string(to_string(k)) + ": " + what), kind_(k) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Angular tolerance; GEODESIC_CODER_TOL overrides the default 1e-9.
double angle_tol();
double matrix_tol();
void set_angle_tol(double tol);

// Circle points are plain angles in [0, 2pi).
double wrap(double theta);
// Counterclockwise travel from a to b, in [0, 2pi).
double ccw(double a, double b);
double angular_distance(double a, double b);
bool same_point(double a, double b, double tol);
inline bool same_point(double a, double b) { return same_point(a, b, angle_tol()); }
// x in the half-open ccw arc [lo, hi).
bool in_arc(double x, double lo, double hi);
// x in the closed ccw arc [lo, hi], widened by tol at both ends.
bool in_closed_arc(double x, double lo, double hi, double tol);
double midpoint(double lo, double hi);
// Parses "1.25", "pi*3/4", "-pi/6", "2*pi".
double parse_angle(const std::string& text);

struct Geodesic {
    double u = 0;  // backward endpoint
    double w = 0;  // forward endpoint
};

// Disk automorphism [[a, b], [conj b, conj a]].
struct Mobius {
    cplx a{1.0, 0.0};
    cplx b{0.0, 0.0};

    static Mobius identity() { return {}; }
    static Mobius rotation(double alpha);
    // Projects a general 2x2 matrix that preserves the circle onto SU(1,1).
    static Mobius from_matrix(cplx m11, cplx m12, cplx m21, cplx m22);

    double det() const { return std::norm(a) - std::norm(b); }
    double trace() const { return 2.0 * a.real(); }
};

cplx apply_disk(const Mobius& m, cplx z);
double apply(const Mobius& m, double theta);
Geodesic apply(const Mobius& m, const Geodesic& g);
Mobius compose(const Mobius& m1, const Mobius& m2);
Mobius inverse(const Mobius& m);
bool projectively_equal(const Mobius& m1, const Mobius& m2, double tol);
double translation_length(const Mobius& m);

Mobius from_boundary_triple(const std::array<double, 3>& p, const std::array<double, 3>& q);

enum class TraceClass { Hyperbolic, Elliptic, Parabolic, Identity };
const char* to_string(TraceClass c);
TraceClass trace_class(const Mobius& m);

struct FixedPointPair {
    double attracting = 0;
    double repelling = 0;
    TraceClass kind = TraceClass::Hyperbolic;
};

FixedPointPair fixed_points(const Mobius& m);
double derivative_modulus(const Mobius& m, double theta);

struct Circle {
    cplx center;
    double radius = 0;
};

Circle isometric_circle(const Mobius& m);

}  // namespace geocoder
