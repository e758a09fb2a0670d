#include "geocoder/measure.hpp"

#include <cmath>
#include <random>

#include "geocoder/coding.hpp"

namespace geocoder {

double rect_mass(const Rect& r) {
    const double tol = angle_tol();
    double c = r.w_lo, d = c + ccw(r.w_lo, r.w_hi);
    double lu = ccw(r.u_lo, r.u_hi);
    if (lu <= 0 || d - c <= 0 || d - c >= two_pi - tol) return 0;
    // Lift u into (d, c + 2pi) so that u - w stays inside (0, 2pi).
    double a = d + ccw(d, r.u_lo), b = a + lu;
    if (ccw(d, r.u_lo) <= tol || b >= c + two_pi - tol)
        throw Error(ErrorKind::TouchesDiagonal, "rectangle meets the diagonal");
    double v = std::log(std::abs(std::sin((b - d) / 2) * std::sin((a - c) / 2) /
                                 (std::sin((b - c) / 2) * std::sin((a - d) / 2))));
    return std::abs(v);
}

double total_mass(const Attractor& attr) {
    double k = 0;
    for (const Rect& r : attr.rects) k += rect_mass(r);
    return k;
}

double diagonal_gap(const Surface& s) {
    double g = two_pi;
    for (int i = 1; i <= s.n(); ++i) g = std::min(g, angular_distance(s.P(i), s.Q(i)));
    return 0.5 * g;
}

namespace {

// Draws t = u - w in [delta, 2pi - delta] with density proportional to 1/(4 sin^2(t/2)).
struct BandSampler {
    double delta;
    double cot_delta;
    double Z;  // band mass per unit of u, times 2pi

    explicit BandSampler(double d) : delta(d), cot_delta(1 / std::tan(d / 2)), Z(two_pi * 1 / std::tan(d / 2)) {}

    // The antiderivative of 1/(4 sin^2(t/2)) is -cot(t/2)/2; invert it.
    double offset(double x) const { return 2 * std::atan2(1.0, cot_delta * (1 - 2 * x)); }
};

}  // namespace

MassEstimate monte_carlo_mass(const Surface& s, const Attractor& attr, std::size_t samples, std::uint64_t seed) {
    BandSampler band(diagonal_gap(s));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MassEstimate e;
    e.samples = samples;
    for (std::size_t k = 0; k < samples; ++k) {
        double u = two_pi * unit(rng);
        double w = wrap(u - band.offset(unit(rng)));
        if (attr.contains(u, w, 0)) ++e.hits;
    }
    if (samples == 0) return e;
    double p = static_cast<double>(e.hits) / static_cast<double>(samples);
    e.value = band.Z * p;
    e.stderr_ = band.Z * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    return e;
}

const char* to_string(MassMethod m) { return m == MassMethod::ClosedForm ? "closed-form" : "monte-carlo"; }

MeasureReport entropy(const Surface& s, const Attractor& attr, MassMethod method, std::size_t samples,
                      std::uint64_t seed) {
    MeasureReport r;
    r.genus = s.genus();
    r.method = method;
    if (method == MassMethod::ClosedForm) {
        r.K = total_mass(attr);
        r.K_error = r.K * 1e-12 * static_cast<double>(attr.rects.size());
    } else {
        MassEstimate e = monte_carlo_mass(s, attr, samples, seed);
        r.K = e.value;
        r.K_error = e.stderr_;
    }
    if (r.K <= 0) throw Error(ErrorKind::InvalidArgument, "attractor has no mass");
    const double c = pi * pi * (2.0 * s.genus() - 2.0);
    r.entropy = c / r.K;
    r.error = c * r.K_error / (r.K * r.K);
    return r;
}

MassEstimate mean_return_time(const Surface& s, const Attractor& attr, std::size_t samples, std::uint64_t seed) {
    // Band samples that land in the attractor are distributed as nu / K.
    BandSampler band(diagonal_gap(s));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    MassEstimate e;
    double sum = 0, sq = 0;
    std::size_t tries = 0;
    while (e.hits < samples && tries < 1000 * samples) {
        ++tries;
        double u = two_pi * unit(rng);
        double w = wrap(u - band.offset(unit(rng)));
        if (attr.margin(u, w) <= 0) continue;
        double g = return_time(s, attr, u, w);
        sum += g;
        sq += g * g;
        ++e.hits;
    }
    e.samples = tries;
    if (e.hits == 0) return e;
    double n = static_cast<double>(e.hits);
    e.value = sum / n;
    e.stderr_ = std::sqrt(std::max(0.0, sq / n - e.value * e.value) / n);
    return e;
}

}  // namespace geocoder
