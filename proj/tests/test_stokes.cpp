#include <doctest.h>

#include <cmath>
#include <random>

#include "stt/mac_stencil.hpp"
#include "stt/norms.hpp"
#include "stt/scenario.hpp"
#include "stt/stokes.hpp"
#include "support.hpp"

using namespace stt;
using namespace stt::testing;

namespace {

VelocityField random_forcing(const GridSpec& g, std::mt19937_64& rng) {
    return VelocityField(random_field(g, Staggering::XFace, rng), random_field(g, Staggering::ZFace, rng));
}

double max_diff(const ScalarField& a, const ScalarField& b) { return lq_norm(a - b, INFINITY); }

double mean(const ScalarField& p) { return check_compatibility(p); }

}  // namespace

TEST_CASE("zero forcing gives zero flow") {
    for (const GridSpec& g : {make_grid(DomainSpec::rectangle(1.0), 16, 16), make_grid(DomainSpec::strip(8), 32, 8)}) {
        const StokesSolution s = solve_stokes(VelocityField(g));
        CHECK(lq_norm(s.u, INFINITY) == 0.0);
        CHECK(lq_norm(s.p, INFINITY) == 0.0);
    }
}

TEST_CASE("solver contract on random forcing") {
    std::mt19937_64 rng(11);
    for (const GridSpec& g : {make_grid(DomainSpec::rectangle(1.0), 24, 24), make_grid(DomainSpec::rectangle(2.0), 32, 16),
                              make_grid(DomainSpec::strip(8), 64, 16)}) {
        const VelocityField f = random_forcing(g, rng);
        const StokesConfig cfg;
        const StokesSolution s = solve_stokes(f, cfg);
        const double scale = std::max(1.0, lq_norm(f, INFINITY));
        CHECK(s.residual_norm <= 10 * cfg.linear_solver_tolerance * scale);
        CHECK(momentum_residual(s.u, s.p, f, s.pressure_slope) <= 10 * cfg.linear_solver_tolerance * scale);
        CHECK(max_divergence(s.u) <= cfg.linear_solver_tolerance * scale);
        CHECK(no_slip_exact(s.u));
        CHECK(std::abs(mean(s.p)) <= 1e-12 * std::max(1.0, lq_norm(s.p, INFINITY)));
        if (g.domain.periodic()) CHECK(std::abs(s.flux) <= 1e-10);
    }
}

TEST_CASE("manufactured solution on the unit square") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 32, 32);
    const VelocityField f(sample(g, Staggering::XFace, mms_f1), sample(g, Staggering::ZFace, mms_f2));
    const StokesSolution s = solve_stokes_bounded(f);
    const VelocityField exact = sample_velocity(g, mms_u1, mms_u2);
    CHECK(lq_norm(s.u - exact, 2.0) < 1e-2);
    const ScalarField pe = sample(g, Staggering::Center, mms_p);
    CHECK(lq_norm(s.p - pe, 2.0) < 5e-2);
}

TEST_CASE("linearity") {
    std::mt19937_64 rng(12);
    for (const GridSpec& g : {make_grid(DomainSpec::rectangle(1.0), 16, 16), make_grid(DomainSpec::strip(8), 32, 8)}) {
        const VelocityField f1 = random_forcing(g, rng), f2 = random_forcing(g, rng);
        const double a = 0.7, b = -2.3;
        const StokesSolution s1 = solve_stokes(f1), s2 = solve_stokes(f2), s = solve_stokes(a * f1 + b * f2);
        const VelocityField comb = a * s1.u + b * s2.u;
        CHECK(lq_norm(s.u - comb, INFINITY) <= 1e-9);
        CHECK(max_diff(s.p, a * s1.p + b * s2.p) <= 1e-9);
        CHECK(s.pressure_slope == doctest::Approx(a * s1.pressure_slope + b * s2.pressure_slope).epsilon(1e-9));
    }
}

TEST_CASE("strip translation equivariance") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
    std::mt19937_64 rng(13);
    VelocityField f = random_forcing(g, rng);
    f.u1 = f.u1 + 0.3 * sample(g, Staggering::XFace, [](double x, double z) { return std::exp(-(x - 2) * (x - 2)) * z; });
    const int cells = g.nx / 8;  // one unit
    const StokesSolution a = solve_stokes_strip(f);
    const StokesSolution b = solve_stokes_strip(shift_x(f, cells));
    CHECK(lq_norm(shift_x(a.u, cells) - b.u, INFINITY) <= 1e-12);
    CHECK(max_diff(shift_x(a.p, cells), b.p) <= 1e-11);
}

TEST_CASE("flux is constant across columns") {
    std::mt19937_64 rng(14);
    for (double phi : {0.0, 0.8}) {
        const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
        StokesConfig cfg;
        cfg.flux_target = phi;
        const StokesSolution s = solve_stokes_strip(random_forcing(g, rng), cfg);
        const auto q = flux_profile(s.u);
        REQUIRE(q.size() == static_cast<std::size_t>(g.nx));
        for (double v : q) CHECK(std::abs(v - q.front()) <= 1e-12);
        CHECK(std::abs(s.flux - phi) <= 1e-10);
    }
}

TEST_CASE("f = e_x on the strip") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
    VelocityField f(g);
    for (double& v : f.u1.values()) v = 1.0;
    const StokesSolution s = solve_stokes_strip(f);
    CHECK(lq_norm(s.u, INFINITY) <= 1e-10);
    CHECK(s.pressure_slope == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("Poiseuille solutions") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 32);
    const VelocityField zero(g);

    const StokesSolution p0 = poiseuille(0.0, g);
    CHECK(lq_norm(p0.u, INFINITY) == 0.0);

    const StokesSolution s1 = poiseuille_sampled(1.0, g);
    CHECK(s1.pressure_slope == -12.0);
    CHECK(momentum_residual(s1.u, s1.p, zero, -12.0) <= 1e-12);
    // midpoint flux of 6 z (1 - z) is 1 + hz^2 / 2
    CHECK(flux_profile(s1.u).front() == doctest::Approx(1.0 + 0.5 * g.hz * g.hz).epsilon(1e-13));

    const StokesSolution d1 = poiseuille(1.0, g);
    for (double q : flux_profile(d1.u)) CHECK(std::abs(q - 1.0) <= 1e-12);
    CHECK(momentum_residual(d1.u, d1.p, zero, d1.pressure_slope) <= 1e-12);
    CHECK(d1.pressure_slope == doctest::Approx(-12.0).epsilon(1e-3));
    CHECK(lq_norm(d1.u.u2, INFINITY) == 0.0);

    CHECK_THROWS(poiseuille(1.0, make_grid(DomainSpec::rectangle(1.0), 16, 16)));
}

TEST_CASE("Poiseuille residual at large flux is at rounding level") {
    // the absolute 1e-12 threshold is only reachable for moderate phi / h^2
    for (int nz : {16, 32, 64})
        for (double phi : {2.5, -10.0, 100.0}) {
            const GridSpec g = make_grid(DomainSpec::strip(8), 64, nz);
            const StokesSolution s = poiseuille(phi, g);
            const double floor = 64 * 2.220446049250313e-16 * std::abs(phi) / (g.hz * g.hz);
            CHECK(momentum_residual(s.u, s.p, VelocityField(g), s.pressure_slope) <= floor);
        }
}

TEST_CASE("flux target reproduces Poiseuille and decomposes") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
    StokesConfig cfg;
    cfg.flux_target = 1.7;
    const StokesSolution pure = solve_stokes_strip(VelocityField(g), cfg);
    const StokesSolution ref = poiseuille(1.7, g);
    CHECK(lq_norm(pure.u - ref.u, INFINITY) <= 1e-10);
    CHECK(pure.pressure_slope == doctest::Approx(ref.pressure_slope).epsilon(1e-10));

    std::mt19937_64 rng(15);
    const VelocityField f = random_forcing(g, rng);
    const StokesSolution with = solve_stokes_strip(f, cfg);
    const StokesSolution without = solve_stokes_strip(f);
    CHECK(lq_norm(with.u - ref.u - without.u, INFINITY) <= 1e-10);
    CHECK(std::abs(flux_profile(with.u - ref.u).front()) <= 1e-12);
}

TEST_CASE("stratified density is hydrostatic") {
    ScenarioParams sp;
    sp.generator = "stratified";
    sp.gradient = 3.0;
    for (const GridSpec& g : {make_grid(DomainSpec::rectangle(1.0), 32, 32), make_grid(DomainSpec::strip(8), 64, 16)}) {
        const ScalarField rho = make_density(g, sp);
        const StokesSolution s = solve_buoyancy(rho);
        CHECK(lq_norm(s.u, INFINITY) <= 1e-9);
        // p = -cumulative sum of the face-averaged density
        const VelocityField f = mac::buoyancy_forcing(rho);
        CHECK(momentum_residual(VelocityField(g), s.p, f) <= 1e-9);
    }
}

TEST_CASE("residual sees a single-face perturbation") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 32, 32);
    const VelocityField f(sample(g, Staggering::XFace, mms_f1), sample(g, Staggering::ZFace, mms_f2));
    const StokesSolution s = solve_stokes_bounded(f);
    for (double eps : {1e-6, 1e-4}) {
        VelocityField u = s.u;
        u.u1(10, 10) += eps;
        const double r = momentum_residual(u, s.p, f);
        const double expected = eps * (2 / (g.hx * g.hx) + 2 / (g.hz * g.hz));
        CHECK(r == doctest::Approx(expected).epsilon(1e-3));
    }
}

TEST_CASE("energy ratio is stable under refinement") {
    std::vector<double> ratio;
    for (int n : {32, 64, 128}) {
        const GridSpec g = make_grid(DomainSpec::rectangle(1.0), n, n);
        const ScalarField rho = sample(g, Staggering::Center, [](double x, double z) {
            return std::exp(-20 * ((x - 0.4) * (x - 0.4) + (z - 0.6) * (z - 0.6)));
        });
        const StokesSolution s = solve_buoyancy(rho);
        ratio.push_back(h1_norm(s.u) / hneg1_norm(rho));
    }
    CHECK(ratio[1] == doctest::Approx(ratio[0]).epsilon(0.2));
    CHECK(ratio[2] == doctest::Approx(ratio[1]).epsilon(0.2));
}

TEST_CASE("compatibility integral") {
    const GridSpec g = make_grid(DomainSpec::rectangle(2.0), 32, 16);
    CHECK(check_compatibility(sample(g, Staggering::Center, [](double, double) { return 1.0; })) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(check_compatibility(sample(g, Staggering::Center, [](double x, double) { return x - 1.0; }))) <=
          1e-14);
}

TEST_CASE("config validation and caches") {
    StokesConfig bad;
    bad.linear_solver_tolerance = -1;
    CHECK_THROWS(bad.validate());
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    std::mt19937_64 rng(16);
    const VelocityField f = random_forcing(g, rng);
    const StokesSolution a = solve_stokes(f);
    detail::clear_stokes_caches();
    const StokesSolution b = solve_stokes(f);
    CHECK(lq_norm(a.u - b.u, INFINITY) == 0.0);
    StokesConfig flux;
    flux.flux_target = 1.0;
    CHECK_THROWS(solve_stokes_bounded(f, flux));
}
