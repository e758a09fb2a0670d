#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geocoder/boundary.hpp"

namespace geocoder {

struct DualityVerdict {
    bool reflection_match = false;  // Omega_A' = phi(Omega_A) up to the boundary band
    bool diagram_commutes = false;  // phi o F_A^-1 = F_A' o phi on samples
    int grid_size = 0;
    std::size_t mismatched_cells = 0;
    std::size_t interior_mismatches = 0;
    int samples = 0;
    double max_diagram_error = 0;
    std::optional<Geodesic> counterexample;

    bool dual() const { return reflection_match && diagram_commutes; }
};

struct DualityOptions {
    int grid_size = 1024;
    int samples = 10000;
    int boundary_band = 2;  // cells
    std::uint64_t seed = 1;
};

DualityVerdict dual_check(const Surface& s, const Attractor& a, const Attractor& a_dual,
                          const DualityOptions& opt = {});
DualityVerdict dual_check(const Surface& s, const Partition& a, const Partition& a_dual,
                          const DualityOptions& opt = {});

// m_{-1}, m_{-2}, ...: the strip of u, f(u), f^2(u), ... under the partition.
std::vector<int> backward_expansion(const Surface& s, const Partition& A, double u, int n);

struct NoDualReport {
    int trials = 0;
    int dual_found = 0;
    double min_interior_fraction = 1;  // smallest share of interior mismatches seen
};

// Random short-cycle pairs with A_i uniform in [b_i, a_i].
NoDualReport no_dual_probe(const Surface& s, int trials, std::uint64_t seed, const DualityOptions& opt);

}  // namespace geocoder
