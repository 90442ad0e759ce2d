#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "stt/norms.hpp"
#include "support.hpp"

using namespace stt;
using namespace stt::testing;

namespace {
ScalarField sinsin(const GridSpec& g) {
    return sample(g, Staggering::Center, [](double x, double z) { return std::sin(pi * x) * std::sin(pi * z); });
}
ScalarField constant(const GridSpec& g, double c, Staggering s = Staggering::Center) {
    return sample(g, s, [c](double, double) { return c; });
}
}  // namespace

TEST_CASE("Lebesgue norm examples") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 128, 128);
    CHECK(lq_norm(constant(g, 1.0), 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(lq_norm(sinsin(g), 2.0) - 0.5) <= 1e-4);
    CHECK(lq_norm(constant(g, -3.0), INFINITY) == 3.0);
    CHECK(lq_norm(constant(g, -3.0), 1.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(lq_norm(sinsin(g), 3.0), NormError);
    // face fields integrate with trapezoid end weights
    CHECK(lq_norm(constant(g, 2.0, Staggering::XFace), 1.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(lq_norm(constant(g, 2.0, Staggering::ZFace), 2.0) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("H1 norm examples") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 128, 128);
    CHECK(h1_norm(constant(g, -2.5)) == doctest::Approx(2.5).epsilon(1e-13));
    CHECK(h1_norm(ScalarField(g, Staggering::Center)) == 0.0);
    // exact value (1/4 + pi^2/2)^{1/2}
    const double exact = std::sqrt(0.25 + 0.5 * pi * pi);
    CHECK(std::abs(h1_norm(sinsin(g)) - exact) <= 1e-3);
}

TEST_CASE("H1 of a wall-vanishing velocity includes the wall layers") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 64);
    const VelocityField u = sample_velocity(g, [](double, double z) { return std::sin(pi * z); },
                                            [](double, double) { return 0.0; });
    // |u|^2 = 8/2, |grad u|^2 = 8 pi^2 / 2
    CHECK(h1_norm(u) == doctest::Approx(std::sqrt(4.0 + 4.0 * pi * pi)).epsilon(1e-3));
}

TEST_CASE("H-1 norm examples") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 128, 128);
    CHECK(hneg1_norm(ScalarField(g, Staggering::Center)) == 0.0);
    const double exact = std::sqrt(0.25 / (1 + 2 * pi * pi));
    CHECK(std::abs(hneg1_norm(sinsin(g)) - exact) <= 1e-3);
    CHECK(std::abs(hneg1_norm(sinsin(g)) - 0.10977) <= 1e-3);
    std::mt19937_64 rng(41);
    const ScalarField f = random_field(g, Staggering::Center, rng, 0.3);
    CHECK(hneg1_norm(-4.0 * f) == doctest::Approx(4.0 * hneg1_norm(f)).epsilon(1e-12));
    CHECK_THROWS_AS(hneg1_norm(ScalarField(g, Staggering::XFace)), NormError);
}

TEST_CASE("H-1 norm converges at second order") {
    const double exact = std::sqrt(0.25 / (1 + 2 * pi * pi));
    std::vector<double> e;
    for (int n : {32, 64, 128}) e.push_back(std::abs(hneg1_norm(sinsin(make_grid(DomainSpec::rectangle(1.0), n, n))) - exact));
    CHECK(std::log2(e[0] / e[1]) >= 1.9);
    CHECK(std::log2(e[1] / e[2]) >= 1.9);
}

TEST_CASE("Helmholtz solve on the strip is periodic in x") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
    // eigenfunction cos(2 pi x / 8) sin(pi z)
    const double lam = 1 + std::pow(2 * pi / 8, 2) + pi * pi;
    const ScalarField f = sample(g, Staggering::Center, [](double x, double z) { return std::cos(pi * x / 4) * std::sin(pi * z); });
    const ScalarField w = helmholtz_solve(f);
    CHECK(lq_norm(lam * w - f, INFINITY) < 1e-2);
}

TEST_CASE("norm properties on random fields") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int t = 0; t < 40; ++t) {
        const GridSpec g = t % 2 ? make_grid(DomainSpec::rectangle(1.5), 24, 16) : make_grid(DomainSpec::strip(8), 64, 8);
        const ScalarField a = random_field(g, Staggering::Center, rng, 0.5);
        const ScalarField b = random_field(g, Staggering::Center, rng, 0.5);
        const double c = U(rng);
        for (double q : {1.0, 2.0, double(INFINITY)}) {
            CHECK(lq_norm(c * a, q) == doctest::Approx(std::abs(c) * lq_norm(a, q)).epsilon(1e-12));
            CHECK(lq_norm(a + b, q) <= lq_norm(a, q) + lq_norm(b, q) + 1e-10);
        }
        CHECK(h1_norm(c * a) == doctest::Approx(std::abs(c) * h1_norm(a)).epsilon(1e-12));
        CHECK(h1_norm(a + b) <= h1_norm(a) + h1_norm(b) + 1e-10);
        CHECK(hneg1_norm(a + b) <= hneg1_norm(a) + hneg1_norm(b) + 1e-10);
        CHECK(hneg1_norm(a) <= lq_norm(a, 2.0) + 1e-10);
    }
}

TEST_CASE("partition of unity") {
    const Partition P(8);
    CHECK(Partition::smoothstep(0.0) == 0.0);
    CHECK(Partition::smoothstep(1.0) == 1.0);
    CHECK(Partition::smoothstep(0.5) == 0.5);
    for (int i = 0; i <= 8 * 64; ++i) {
        const double x = i / 64.0;
        CHECK(std::abs(P.sum(x) - 2.0) <= 1e-12);
    }
    for (int k : {0, 3, 7})
        for (int i = 0; i <= 64; ++i) {
            const double y = i / 64.0;
            CHECK(P.chi(k, k + y) == 1.0);           // 1 on U_k
            CHECK(P.chi(k, k + 2 + y * 5) == 0.0);   // 0 outside U_k*
        }
    CHECK(P.chi(0, 7.5) == doctest::Approx(Partition::smoothstep(0.5)));  // wraps to y = -0.5
    CHECK(Partition::equivalence_constant(0) == 1.0);
    CHECK(Partition::equivalence_constant(1) == doctest::Approx(std::sqrt(1 + 4 * (15.0 / 8) * (15.0 / 8))));
    CHECK_THROWS_AS(Partition(6), NormError);
    CHECK_THROWS_AS(Partition::equivalence_constant(-1), NormError);
}

TEST_CASE("uloc norm examples") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 8);
    const Partition P(g.domain);
    for (int m : {-1, 0, 1}) {
        const NormReport z = uloc_norm(ScalarField(g, Staggering::Center), m, P);
        CHECK(z.value == 0.0);
        CHECK(z.per_window.size() == 8);
    }
    std::mt19937_64 rng(43);
    const ScalarField f = random_field(g, Staggering::Center, rng, 0.5);
    const int unit = g.nx / 8;
    for (int m : {-1, 0, 1}) {
        const NormReport a = uloc_norm(f, m, P), b = uloc_norm(shift_x(f, unit), m, P);
        CHECK(std::abs(a.value - b.value) <= 1e-12 * std::max(1.0, a.value));
        double mx = 0.0;
        for (double w : a.per_window) mx = std::max(mx, w);
        CHECK(a.value == mx);
        CHECK(a.name == "uloc_m" + std::to_string(m));
    }
    CHECK_THROWS_AS(uloc_norm(ScalarField(make_grid(DomainSpec::rectangle(1.0), 16, 16), Staggering::Center), 0, P),
                    NormError);
    CHECK_THROWS_AS(uloc_norm(f, 2, P), NormError);
    CHECK_THROWS_AS(window_norm(ScalarField(make_grid(DomainSpec::strip(8), 60, 8), Staggering::Center), 0, P.unit(1)),
                    NormError);
}

TEST_CASE("uloc L2 against one-period L2") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 128, 8);
    const Partition P(8);
    std::mt19937_64 rng(44);
    for (int t = 0; t < 10; ++t) {
        const ScalarField f = random_field(g, Staggering::Center, rng, 0.5);
        CHECK(uloc_norm(f, 0, P).value <= lq_norm(f, 2.0) + 1e-12);
    }
    // supported well inside U_3, the cutoff is 1 there: uloc equals L2
    const ScalarField b = sample(g, Staggering::Center, [](double x, double z) {
        const double y = x - 3.5;
        return std::abs(y) < 0.4 ? std::pow(std::cos(pi * y / 0.8), 2) * z : 0.0;
    });
    CHECK(uloc_norm(b, 0, P).value == doctest::Approx(lq_norm(b, 2.0)).epsilon(1e-12));
}

TEST_CASE("velocity uloc and window norms") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 16);
    const Partition P(8);
    const VelocityField u = sample_velocity(g, [](double x, double z) { return std::sin(pi * z) * (2 + std::cos(pi * x / 4)); },
                                            [](double, double) { return 0.0; });
    CHECK(uloc_norm(u, 0, P).value > 0.0);
    CHECK(uloc_norm(u, 1, P).value >= uloc_norm(u, 0, P).value);
    CHECK_THROWS_AS(uloc_norm(u, -1, P), NormError);
    CHECK(window_norm(u, 0, P.unit(2)) <= window_norm(u, 0, P.star(2)));
}

TEST_CASE("window norms") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 8);
    const ScalarField one = sample(g, Staggering::Center, [](double, double) { return 1.0; });
    const Partition P(8);
    CHECK(window_norm(one, 0, P.unit(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(window_norm(one, 0, P.star(0)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    CHECK(window_norm(one, 1, P.omega(2)) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(window_norm(one, -1, P.unit(0)), NormError);
}

TEST_CASE("window energy bound") {
    const GridSpec g = make_grid(DomainSpec::strip(8), 64, 8);
    const Partition P(8);
    const ScalarField one = sample(g, Staggering::Center, [](double, double) { return 1.0; });
    for (int n = 1; n <= 4; ++n) {
        const WindowEnergyReport w = window_energy_bound(one, n, P);
        CHECK(w.lhs == doctest::Approx(std::sqrt(2.0 * n)).epsilon(1e-12));
        CHECK_FALSE(w.violation);
    }
    const WindowEnergyReport z = window_energy_bound(ScalarField(g, Staggering::Center), 2, P);
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
    CHECK_FALSE(z.violation);
    CHECK_THROWS_AS(window_energy_bound(one, 5, P), NormError);
    std::mt19937_64 rng(45);
    for (int t = 0; t < 200; ++t) {
        const ScalarField f = random_field(g, Staggering::Center, rng, 2.0);
        CHECK_FALSE(window_energy_bound(f, 1 + t % 4, P).violation);
    }
}

TEST_CASE("norm report csv") {
    NormReport r{"uloc_m0", 0.1, {0.1, 1.0 / 3}};
    CHECK(r.to_csv() == "uloc_m0,0.10000000000000001,0.10000000000000001,0.33333333333333331");
    CHECK(NormReport{"l2", 2.0, {}}.to_csv() == "l2,2");
}

TEST_CASE("cached factorizations can be dropped") {
    const GridSpec g = make_grid(DomainSpec::rectangle(1.0), 16, 16);
    const double a = hneg1_norm(sinsin(g));
    detail::clear_norm_caches();
    CHECK(hneg1_norm(sinsin(g)) == a);
}
