#include <doctest.h>

#include <cmath>
#include <random>

#include "stt/domain.hpp"
#include "stt/stokes.hpp"
#include "support.hpp"

using namespace stt;
using namespace stt::testing;

TEST_CASE("make_grid spacings") {
    const GridSpec a = make_grid(DomainSpec::strip(8), 64, 32);
    CHECK(a.hx == 0.125);
    CHECK(a.hz == 0.03125);
    const GridSpec b = make_grid(DomainSpec::rectangle(1.0), 32, 32);
    CHECK(b.hx == 1.0 / 32);
    CHECK(b.hz == 1.0 / 32);
}

TEST_CASE("make_grid rejects bad input") {
    CHECK_THROWS_AS(DomainSpec::strip(7.5), DomainError);
    CHECK_THROWS_AS(DomainSpec::strip(4), DomainError);
    CHECK_THROWS_AS(DomainSpec::rectangle(0.0), DomainError);
    CHECK_THROWS_AS(make_grid(DomainSpec::rectangle(1.0), 4, 32), DomainError);
    CHECK_THROWS_AS(make_grid(DomainSpec::rectangle(1.0), 32, -1), DomainError);
}

TEST_CASE("sample counts per staggering") {
    const GridSpec r = make_grid(DomainSpec::rectangle(2.0), 16, 8);
    CHECK(x_samples(r, Staggering::Center) == 16);
    CHECK(x_samples(r, Staggering::XFace) == 17);
    CHECK(z_samples(r, Staggering::ZFace) == 9);
    const GridSpec s = make_grid(DomainSpec::strip(8), 16, 8);
    CHECK(x_samples(s, Staggering::XFace) == 16);
    CHECK(z_samples(s, Staggering::ZFace) == 9);
    CHECK_THROWS(ScalarField(r, Staggering::Center, std::vector<double>(3)));
}

TEST_CASE("interpolate_velocity examples") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 32);
    const VelocityField zero(g);
    const Vec2 z0 = interpolate_velocity(zero, {3.3, 0.41});
    CHECK(z0.x == 0.0);
    CHECK(z0.z == 0.0);

    // u1 samples sit at z = (k + 1/2) hz, so z = 0.5 lies between two rows;
    // the interpolant of the quadratic is exact up to O(h^2)
    for (double phi : {1.0, -0.5}) {
        const StokesSolution p = poiseuille_sampled(phi, g);
        const Vec2 v = interpolate_velocity(p.u, {2.0, 0.5});
        CHECK(v.x == doctest::Approx(1.5 * phi).epsilon(2e-3));
        CHECK(v.z == 0.0);
        // exactly between two rows: error is 6 phi (hz/2)^2
        CHECK(std::abs(v.x - 1.5 * phi) <= 6 * std::abs(phi) * 0.25 * g.hz * g.hz * (1 + 1e-9));
    }

    std::mt19937_64 rng(1);
    VelocityField u(random_field(g, Staggering::XFace, rng), random_field(g, Staggering::ZFace, rng));
    for (int i = 0; i < g.nx; ++i) u.u2(i, 0) = u.u2(i, g.nz) = 0.0;
    for (double x : {0.0, 1.7, 7.99}) {
        const Vec2 top = interpolate_velocity(u, {x, 1.0});
        const Vec2 bottom = interpolate_velocity(u, {x, 0.0});
        CHECK(top.x == 0.0);
        CHECK(top.z == 0.0);
        CHECK(bottom.x == 0.0);
        CHECK(bottom.z == 0.0);
    }
}

TEST_CASE("interpolation is periodic and convex") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 32, 8);
    std::mt19937_64 rng(2);
    VelocityField u(random_field(g, Staggering::XFace, rng, 1.0), random_field(g, Staggering::ZFace, rng, 1.0));
    u = sample_velocity(g, [&](double x, double z) { return interpolate_velocity(u, {x, z}).x; },
                        [&](double x, double z) { return interpolate_velocity(u, {x, z}).z; });
    std::uniform_real_distribution<double> X(0.0, 8.0), Z(0.0, 1.0);
    for (int t = 0; t < 500; ++t) {
        // dyadic x so that x + 8 and x - 16 are exact
        const double x = std::ldexp(std::floor(std::ldexp(X(rng), 40)), -40), z = Z(rng);
        const Vec2 a = interpolate_velocity(u, {x, z});
        const Vec2 b = interpolate_velocity(u, {x + 8.0, z});
        const Vec2 c = interpolate_velocity(u, {x - 16.0, z});
        CHECK(a.x == b.x);
        CHECK(a.z == b.z);
        CHECK(a.x == c.x);
        // u1 stencil: columns floor(x/hx), +1; rows around z - hz/2 (or wall)
        const int i = static_cast<int>(std::floor(x / g.hx));
        const double sk = z / g.hz - 0.5;
        double lo = INFINITY, hi = -INFINITY;
        for (int di = 0; di < 2; ++di)
            for (int k = static_cast<int>(std::floor(sk)); k <= static_cast<int>(std::floor(sk)) + 1; ++k) {
                const double v = (k < 0 || k >= g.nz) ? 0.0 : u.u1((i + di) % g.nx, k);
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
        CHECK(a.x >= lo);
        CHECK(a.x <= hi);
    }
}

TEST_CASE("rectangle interpolation rejects outside points") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    const VelocityField u(g);
    CHECK_THROWS_AS(interpolate_velocity(u, {1.1, 0.5}), DomainError);
    CHECK_THROWS_AS(interpolate_velocity(u, {0.5, -0.1}), DomainError);
    CHECK_NOTHROW(interpolate_velocity(u, {1.0, 1.0}));
}

TEST_CASE("center interpolation hits samples and stays in hull") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 12);
    std::mt19937_64 rng(3);
    const ScalarField f = random_field(g, Staggering::Center, rng, 1.0);
    CHECK(interpolate_center_index(f, 3.0, 4.0) == f(3, 4));
    CHECK(interpolate_center_index(f, -5.0, 40.0) == f(0, 11));
    std::uniform_real_distribution<double> U(-1.0, 17.0);
    for (int t = 0; t < 200; ++t) {
        const double v = interpolate_center_index(f, U(rng), U(rng));
        CHECK(v >= f.min());
        CHECK(v <= f.max());
    }
}

TEST_CASE("no-slip rows stored as exact zeros") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    const VelocityField u = sample_velocity(g, mms_u1, mms_u2);
    CHECK(no_slip_exact(u));
    VelocityField bad = u;
    bad.u2(3, 0) = 1e-300;
    CHECK_FALSE(no_slip_exact(bad));
    CHECK_THROWS_AS(check_velocity_invariants(bad, 1.0), DomainError);
}

TEST_CASE("divergence of a discrete stream function is zero") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 32, 16);
    // psi at cell corners; u1 = d_z psi, u2 = -d_x psi
    auto psi = [&](int i, int k) {
        const double x = i * g.hx, z = k * g.hz;
        return std::pow(std::sin(pi * z), 2) * (1 + 0.3 * std::cos(2 * pi * x / 8));
    };
    VelocityField u(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) u.u1(i, k) = (psi(i, k + 1) - psi(i, k)) / g.hz;
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) u.u2(i, k) = -(psi(i + 1, k) - psi(i, k)) / g.hx;
    CHECK(max_divergence(u) < 1e-12);
}

TEST_CASE("shift_x translates by whole cells") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 32, 8);
    std::mt19937_64 rng(4);
    const ScalarField f = random_field(g, Staggering::Center, rng);
    const ScalarField s = shift_x(f, 5);
    CHECK(s(7, 3) == f(2, 3));
    CHECK(s(2, 3) == f(29, 3));
    const ScalarField back = shift_x(s, -5);
    for (std::size_t n = 0; n < f.size(); ++n) CHECK(back.values()[n] == f.values()[n]);
}

TEST_CASE("field arithmetic checks grids") {
    const GridSpec a = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    const GridSpec b = make_grid(DomainSpec::rectangle(1.0), 16, 8);
    const ScalarField fa(a, Staggering::Center), fb(b, Staggering::Center);
    CHECK_THROWS(fa + fb);
    const ScalarField one = sample(a, Staggering::Center, [](double, double) { return 1.0; });
    const ScalarField three = one + 2.0 * one;
    CHECK(three.min() == 3.0);
    CHECK(three.max() == 3.0);
    CHECK((three - one).max() == 2.0);
}
