#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocoder/boundary.hpp"

namespace geocoder {

enum class CodeFlavor { Arithmetic, Geometric };
const char* to_string(CodeFlavor f);

struct CodingSequence {
    CodeFlavor flavor = CodeFlavor::Arithmetic;
    int genus = 0;
    std::string partition_kind;
    std::vector<int> past;    // n_{-1}, n_{-2}, ...
    std::vector<int> future;  // n_0, n_1, ...
    std::vector<int> period;  // repetend starting at n_0, empty when no return was seen
    std::vector<int> reducing_word;
};

// Least rotation in lexicographic order.
std::vector<int> canonical_rotation(const std::vector<int>& word);

struct GeoStep {
    double u = 0;
    double w = 0;
    int side = 0;
};

// F_G: applies T_i where i is the exit side.
GeoStep geometric_step(const Surface& s, double u, double w);
// F_G^-1: applies T_j where j is the entry side.
GeoStep geometric_inverse_step(const Surface& s, double u, double w);

enum class Region { O, LowerBulge, UpperBulge, LowerCorner, UpperCorner };
const char* to_string(Region r);

struct RegionTag {
    Region region = Region::O;
    int index = 0;
};

bool in_omega_g(const Surface& s, double u, double w);
RegionTag classify(const Surface& s, const Attractor& attr, double u, double w);

// The corner map Phi applies on a tag (identity on O).
Mobius phi_map(const Surface& s, const RegionTag& tag);
Mobius phi_inverse_map(const Surface& s, const RegionTag& tag);
Geodesic phi(const Surface& s, const Attractor& attr, double u, double w);
Geodesic phi_inverse(const Surface& s, const Attractor& attr, double u, double w);

CodingSequence arithmetic_code(const Surface& s, const Attractor& attr, Geodesic g, int n_future, int n_past,
                               bool auto_reduce = true);
CodingSequence geometric_code(const Surface& s, Geodesic g, int n_future, int n_past);

// Point of the cross-section on a reduced geodesic (Poincare disk).
cplx cross_section_point(const Surface& s, const Attractor& attr, double u, double w);
// Signed hyperbolic arclength coordinate of z along the geodesic u -> w.
double arclength(cplx z, double u, double w);
double return_time(const Surface& s, const Attractor& attr, double u, double w);

struct FirstReturn {
    double arithmetic_time = 0;
    double geometric_time = 0;
    cplx arithmetic_point;  // return point pulled back onto the original geodesic
    cplx geometric_point;
    double error() const;
};

// Compares the return of a reduced geodesic to the arithmetic cross-section with
// the return of Phi^-1 of it to the geometric one, both seen on the same geodesic.
FirstReturn first_return(const Surface& s, const Attractor& attr, double u, double w);

// The configuration that the conjugacy proof rules out: (u, w) in the upper
// corner i, F_A applies T_{i+1}, and U_i^-1 (u, w) exits through side tau(i)-2.
bool case4_event(const Surface& s, const Attractor& attr, double u, double w);

struct ProbeResult {
    int m = 0;
    double max_distance = 0;
    int base_points = 0;
    int accepted_pairs = 0;
};

// Samples reduced geodesics, builds nearby geodesics whose codes agree on
// |k| <= m and reports the largest endpoint distance.
ProbeResult code_continuity_probe(const Surface& s, const Attractor& attr, int m, int samples = 200,
                                  std::uint64_t seed = 1);

}  // namespace geocoder
