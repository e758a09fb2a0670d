#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geocoder/surface.hpp"

namespace geocoder {

enum class PartitionKind { Midpoints, ProductFixedPoints, Mixed, EndpointsP, EndpointsQ, EndpointsPattern, Custom };
const char* to_string(PartitionKind k);

struct Partition {
    PartitionKind kind = PartitionKind::Custom;
    std::string label;
    std::vector<double> A;  // A[i-1] holds A_i

    int n() const { return static_cast<int>(A.size()); }
    double at(int i) const { return A[((i - 1) % n() + n()) % n()]; }
    bool endpoints() const;
};

Partition make_partition(const Surface& s, PartitionKind kind, const std::string& pattern = "");
// Accepts midpoints, product, mixed, endpoints:P, endpoints:Q, endpoints:PQQP...,
// or custom:<angle>,<angle>,... with one angle per side.
Partition parse_partition(const Surface& s, const std::string& spec);
Partition custom_partition(const Surface& s, std::vector<double> A, const std::string& label = "custom");

struct CycleInterval {
    double b = 0;
    double a = 0;
};

// [b_i, a_i]: every A_i inside has the short cycle property.
CycleInterval short_cycle_interval(const Surface& s, int i);

// The i with x in [A_i, A_{i+1}).
int strip_of(const Partition& A, double x);

struct CircleStep {
    double x = 0;
    int i = 0;
};

CircleStep boundary_step(const Surface& s, const Partition& A, double x);

struct CycleEntry {
    double B = 0;
    double C = 0;
    double cycle_end = 0;  // U_i^-1 A_i
    bool short_cycle = false;
    double mismatch = 0;   // |f(T_i A_i) - f(T_{i-1} A_i)|
    CycleInterval interval;
};

struct CycleReport {
    std::vector<CycleEntry> entries;  // entries[i-1]
    const CycleEntry& at(int i) const {
        int n = static_cast<int>(entries.size());
        return entries[((i - 1) % n + n) % n];
    }
    bool all_short() const;
};

CycleReport cycle_report(const Surface& s, const Partition& A);

// Closed ccw arc [lo, hi] in the u coordinate.
struct Arc {
    double lo = 0;
    double hi = 0;
};

// Signed distance of u to the arc: positive inside, negative outside.
double arc_margin(const Arc& arc, double u);
// Components (at most two) of the intersection of two closed arcs.
std::vector<Arc> intersect_arcs(const Arc& x, const Arc& y);
inline double arc_length(const Arc& a) { return ccw(a.lo, a.hi); }

// Axis-parallel "rectangle" [u_lo,u_hi] x [w_lo,w_hi] of ccw arcs.
struct Rect {
    double u_lo = 0, u_hi = 0, w_lo = 0, w_hi = 0;
    int strip = 0;
    int piece = 0;
};

enum class Provenance { ClosedForm, Numeric };

class Attractor {
public:
    Provenance provenance = Provenance::ClosedForm;
    Partition partition;
    std::vector<Rect> rects;

    // Closed-form data.
    std::vector<double> B, C;

    // Numeric data.
    int iterations = 0;

    // u-section {u : (u, w) in the attractor} as closed arcs.
    std::vector<Arc> section(double w) const;
    double margin(double u, double w) const;
    bool contains(double u, double w, double tol) const;
    bool contains(double u, double w) const { return contains(u, w, angle_tol()); }

    double strip_lo(int i) const { return partition.at(i); }

};

Attractor closed_form_attractor(const Surface& s, const Partition& A, const CycleReport& report);
// Iterates S -> F(S) n S on unions of rectangles, starting from [Q_{i+1}, P_i] over strip i.
Attractor numeric_attractor(const Surface& s, const Partition& A, int max_steps = 1000, int max_levels = 20000);
// Closed form under the short cycle property, numeric for endpoint partitions and otherwise.
Attractor attractor(const Surface& s, const Partition& A);

// Cell-centre rasterisation, row = w cell, column = u cell.
std::vector<std::uint8_t> rasterize(const Attractor& attr, int grid_size);

bool is_reduced(const Attractor& attr, double u, double w);

struct PairStep {
    double u = 0;
    double w = 0;
    int i = 0;  // generator index applied (forward) or strip of the preimage (inverse)
};

PairStep natural_extension_step(const Surface& s, const Partition& A, double u, double w);
// The preimage under F_A inside the attractor.
PairStep inverse_step(const Surface& s, const Attractor& attr, double u, double w);

struct Reduction {
    double u = 0;
    double w = 0;
    std::vector<int> applied;  // generator indices in application order
};

Reduction reduce(const Surface& s, const Attractor& attr, double u, double w, int max_steps = 1000);

}  // namespace geocoder
