#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "stt/kernels.hpp"
#include "stt/norms.hpp"
#include "stt/stokes.hpp"
#include "stt/transport.hpp"
#include "support.hpp"

using namespace stt;
using namespace stt::testing;

namespace {
bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}
}  // namespace

TEST_CASE("trace kernels agree bitwise") {
    for (const GridSpec& g : {make_grid(DomainSpec::rectangle(1.0), 32, 32), make_grid(DomainSpec::strip(8), 128, 16)}) {
        std::mt19937_64 rng(31);
        const SteadyVelocity u(solve_buoyancy(random_field(g, Staggering::Center, rng, 0.5)).u);
        TransportConfig tc;
        tc.dt = 0.05;
        std::vector<double> ax(g.nx * g.nz), az(ax.size()), bx(ax.size()), bz(ax.size());
        kernels::trace_seeds_serial(u, g, 0.0, 1.0, tc, ax.data(), az.data());
        kernels::trace_seeds_omp(u, g, 0.0, 1.0, tc, bx.data(), bz.data());
        CHECK(same_bits(ax, bx));
        CHECK(same_bits(az, bz));
    }
}

TEST_CASE("sampling kernels agree bitwise") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 128, 16);
    std::mt19937_64 rng(32);
    const ScalarField rho = random_field(g, Staggering::Center, rng, 1.0);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    std::vector<double> dx(rho.size()), dz(rho.size()), a(rho.size()), b(rho.size());
    for (auto& v : dx) v = U(rng);
    for (auto& v : dz) v = 0.2 * U(rng);
    kernels::sample_feet_serial(rho, dx.data(), dz.data(), a.data());
    kernels::sample_feet_omp(rho, dx.data(), dz.data(), b.data());
    CHECK(same_bits(a, b));
}

TEST_CASE("reduction kernels agree bitwise") {
    std::mt19937_64 rng(33);
    std::normal_distribution<double> N;
    const int nx = 257, nz = 33;
    std::vector<double> a(nx * nz), b(nx * nz), wx(nx), wz(nz);
    for (auto& v : a) v = N(rng);
    for (auto& v : b) v = N(rng);
    for (auto& v : wx) v = 1 + 0.1 * N(rng);
    for (auto& v : wz) v = 1 + 0.1 * N(rng);
    const double s = kernels::tensor_dot_serial(a.data(), b.data(), wx.data(), nx, wz.data(), nz);
    const double p = kernels::tensor_dot_omp(a.data(), b.data(), wx.data(), nx, wz.data(), nz);
    CHECK(std::memcmp(&s, &p, sizeof s) == 0);
}

TEST_CASE("library results do not depend on the execution mode") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 32, 32);
    std::mt19937_64 rng(34);
    const ScalarField rho = random_field(g, Staggering::Center, rng, 0.5);
    const SteadyVelocity u(solve_buoyancy(rho).u);
    kernels::set_default_exec(kernels::Exec::Serial);
    const ScalarField a = push_forward(rho, u, 0.0, 0.5);
    const double na = lq_norm(a, 2.0);
    kernels::set_default_exec(kernels::Exec::Parallel);
    const ScalarField b = push_forward(rho, u, 0.0, 0.5);
    const double nb = lq_norm(b, 2.0);
    CHECK(kernels::default_exec() == kernels::Exec::Parallel);
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(&na, &nb, sizeof na) == 0);
}

TEST_CASE("parallel trace rethrows worker errors") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    const AnalyticVelocity bad(g.domain, [](double, Vec2 p) { return Vec2{p.z > 0.5 ? NAN : 0.0, 0.0}; });
    std::vector<double> dx(g.nx * g.nz), dz(dx.size());
    CHECK_THROWS_AS(kernels::trace_seeds_omp(bad, g, 0.0, 1.0, TransportConfig{}, dx.data(), dz.data()),
                    TransportError);
}
