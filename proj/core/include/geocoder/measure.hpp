#pragma once

#include <cstdint>
#include <string>

#include "geocoder/boundary.hpp"

namespace geocoder {

// Mass of [u_lo,u_hi] x [w_lo,w_hi] under dnu = |du||dw| / |e^{iu} - e^{iw}|^2.
double rect_mass(const Rect& r);
double total_mass(const Attractor& attr);

struct MassEstimate {
    double value = 0;
    double stderr_ = 0;
    std::size_t samples = 0;
    std::size_t hits = 0;
};

// Half the smallest gap |P_i Q_i|; the band |u - w| < delta misses every attractor.
double diagonal_gap(const Surface& s);

// Importance sampling from the density 1/(4 sin^2((u-w)/2)) on delta <= u - w <= 2pi - delta.
MassEstimate monte_carlo_mass(const Surface& s, const Attractor& attr, std::size_t samples, std::uint64_t seed);

enum class MassMethod { ClosedForm, MonteCarlo };
const char* to_string(MassMethod m);

struct MeasureReport {
    int genus = 0;
    double K = 0;
    double entropy = 0;
    MassMethod method = MassMethod::ClosedForm;
    double error = 0;  // on the entropy
    double K_error = 0;
};

// h = pi^2 (2g - 2) / K.
MeasureReport entropy(const Surface& s, const Attractor& attr, MassMethod method = MassMethod::ClosedForm,
                      std::size_t samples = 0, std::uint64_t seed = 1);

// Mean of return_time under the normalised measure nu / K.
MassEstimate mean_return_time(const Surface& s, const Attractor& attr, std::size_t samples, std::uint64_t seed);

}  // namespace geocoder
