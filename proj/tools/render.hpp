#pragma once

#include <string>
#include <vector>

#include "geocoder/boundary.hpp"

namespace geocoder::cli {

// Fixed-width decimal text, identical across runs.
std::string num(double x);

// The attractor in [0, 2pi)^2, u across and w up, with the diagonal drawn.
std::string attractor_svg(const Attractor& attr, int size = 640);

struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string str() const;
};

}  // namespace geocoder::cli
