#include "render.hpp"

#include <cstdio>
#include <sstream>

namespace geocoder::cli {

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

namespace {

// Splits a ccw arc into pieces of [0, 2pi).
std::vector<std::pair<double, double>> unwrap(double lo, double hi) {
    double len = ccw(lo, hi);
    lo = wrap(lo);
    if (lo + len <= two_pi) return {{lo, lo + len}};
    return {{lo, two_pi}, {0, lo + len - two_pi}};
}

}  // namespace

std::string attractor_svg(const Attractor& attr, int size) {
    const int pad = 40;
    const double k = size / two_pi;
    auto X = [&](double u) { return pad + u * k; };
    auto Y = [&](double w) { return pad + size - w * k; };
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * pad << "\" height=\"" << size + 2 * pad
       << "\" viewBox=\"0 0 " << size + 2 * pad << ' ' << size + 2 * pad << "\">\n";
    os << "<title>attractor " << attr.partition.label << "</title>\n";
    os << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << size << "\" height=\"" << size
       << "\" fill=\"white\" stroke=\"black\"/>\n";
    os << "<g fill=\"#4a7ab8\" fill-opacity=\"0.85\" stroke=\"none\">\n";
    for (const Rect& r : attr.rects) {
        if (ccw(r.u_lo, r.u_hi) <= 0 || ccw(r.w_lo, r.w_hi) <= 0) continue;
        for (auto [u0, u1] : unwrap(r.u_lo, r.u_hi))
            for (auto [w0, w1] : unwrap(r.w_lo, r.w_hi)) {
                char buf[160];
                std::snprintf(buf, sizeof buf, "<rect x=\"%.3f\" y=\"%.3f\" width=\"%.3f\" height=\"%.3f\"/>\n", X(u0),
                              Y(w1), (u1 - u0) * k, (w1 - w0) * k);
                os << buf;
            }
    }
    os << "</g>\n";
    os << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(two_pi) << "\" y2=\"" << Y(two_pi)
       << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
    os << "<text x=\"" << pad + size / 2 << "\" y=\"" << size + 2 * pad - 10 << "\" text-anchor=\"middle\">u</text>\n";
    os << "<text x=\"12\" y=\"" << pad + size / 2 << "\">w</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string Csv::str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
}

}  // namespace geocoder::cli
