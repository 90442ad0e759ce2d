#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "stt/domain.hpp"
#include "stt/transport.hpp"

namespace stt::testing {

inline constexpr double pi = std::numbers::pi;

// Manufactured Stokes pair on the unit square: u = perp grad psi with
// psi = (sin pi x sin pi z)^2, p = cos pi x cos pi z. The forcing
// f = -Lap u + grad p was derived symbolically.
inline double mms_u1(double x, double z) {
    return 2 * pi * std::pow(std::sin(pi * x), 2) * std::sin(pi * z) * std::cos(pi * z);
}
inline double mms_u2(double x, double z) {
    return -2 * pi * std::sin(pi * x) * std::pow(std::sin(pi * z), 2) * std::cos(pi * x);
}
inline double mms_p(double x, double z) { return std::cos(pi * x) * std::cos(pi * z); }
inline double mms_f1(double x, double z) {
    const double sx = std::sin(pi * x), sz = std::sin(pi * z);
    return pi * std::cos(pi * z) * (16 * pi * pi * sx * sx * sz - sx - 4 * pi * pi * sz);
}
inline double mms_f2(double x, double z) {
    const double sx = std::sin(pi * x), sz = std::sin(pi * z);
    return pi * std::cos(pi * x) * (-16 * pi * pi * sx * sz * sz + 4 * pi * pi * sx - sz);
}

// Random smooth field: a few x-Fourier modes (periodic in Lx) times random
// z-polynomials, plus optional white noise.
inline ScalarField random_field(const GridSpec& g, Staggering s, std::mt19937_64& rng, double noise = 0.0) {
    std::normal_distribution<double> nd;
    double a[4][3], b[4][3];
    for (int m = 0; m < 4; ++m)
        for (int j = 0; j < 3; ++j) {
            a[m][j] = nd(rng) / (1 + m);
            b[m][j] = nd(rng) / (1 + m);
        }
    const double L = g.domain.x_extent;
    ScalarField f = sample(g, s, [&](double x, double z) {
        double v = 0.0;
        for (int m = 0; m < 4; ++m) {
            const double c = std::cos(2 * pi * m * x / L), sn = std::sin(2 * pi * m * x / L);
            const double pz = a[m][0] + a[m][1] * z + a[m][2] * z * z;
            const double qz = b[m][0] + b[m][1] * z + b[m][2] * z * z;
            v += c * pz + sn * qz;
        }
        return v;
    });
    if (noise > 0.0)
        for (double& v : f.values()) v += noise * nd(rng);
    return f;
}

// Steady cellular flow on a rectangle [0, Lx] x (0, 1), vanishing on all
// walls, modulated in time.
inline AnalyticVelocity cellular_flow(const DomainSpec& d, double scale) {
    const double L = d.x_extent;
    return AnalyticVelocity(d, [=](double t, Vec2 p) {
        const double s = scale * (1 + 0.5 * std::sin(t));
        const double sx = std::sin(pi * p.x / L), sz = std::sin(pi * p.z);
        return Vec2{s * sx * sx * std::sin(2 * pi * p.z) * pi, -s * std::sin(2 * pi * p.x / L) * sz * sz * pi / L};
    });
}

}  // namespace stt::testing
