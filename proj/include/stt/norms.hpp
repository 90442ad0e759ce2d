#pragma once

// Discrete L^q, H^1 and H^-1 norms, the cutoff partition and uniformly local
// norms on the strip.
//
// Quadrature is a tensor product of per-axis rules:
//   Periodic      n samples, weight h; n wrapped differences
//   Nodal         n+1 samples on the faces, end weights h/2; n differences
//   CenteredFree  n cell centers, weight h; n-1 differences, the two end
//                 differences weighted 1.5 h so the weights cover the extent
//   CenteredWall  as CenteredFree but the field vanishes on both walls:
//                 n-1 interior differences plus (u - 0)/(h/2) at each wall,
//                 weight h/2
// A center field uses CenteredFree in z (Periodic in x on the strip); a
// velocity component uses CenteredWall across the walls it must vanish on.

#include <string>
#include <vector>

#include "stt/domain.hpp"

namespace stt {

class NormError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class AxisRule { Periodic, Nodal, CenteredFree, CenteredWall };

struct AxisRules {
    AxisRule x = AxisRule::CenteredFree;
    AxisRule z = AxisRule::CenteredFree;
};

/// Rules for a scalar sample set; velocity=true selects the wall rules a
/// velocity component obeys.
AxisRules default_rules(const ScalarField& f, bool velocity = false);

/// Closed x-interval [a, b], taken modulo the period on the strip.
struct XWindow {
    double a = 0.0;
    double b = 0.0;
};

/// q = 1, 2 or infinity.
double lq_norm(const ScalarField& f, double q);
double lq_norm(const VelocityField& u, double q);

double h1_norm(const ScalarField& f);
double h1_norm(const ScalarField& f, AxisRules rules);
double h1_norm(const VelocityField& u);

/// sup over H^1_0 test functions of <rho, phi> / |phi|_{H^1}, via one
/// solve of (-Lap_h + I) w = rho; returns <rho, w>^{1/2}.
double hneg1_norm(const ScalarField& rho);

/// w = (-Lap_h + I)^{-1} rho on cell centers, homogeneous Dirichlet data by
/// odd reflection across the walls (x is periodic on the strip).
ScalarField helmholtz_solve(const ScalarField& rho);

/// The (m, 2) norm restricted to samples and differences inside a window
/// (m = 0 or 1).
double window_norm(const ScalarField& f, int m, XWindow w, AxisRules rules);
double window_norm(const ScalarField& f, int m, XWindow w);
double window_norm(const VelocityField& u, int m, XWindow w);

/// Cutoff family on the strip of period L. The profile is
///   chi(y) = S(y + 1) on [-1, 0], 1 on [0, 1], 1 - S(y - 1) on [1, 2],
/// with the quintic smoothstep S(t) = 6t^5 - 15t^4 + 10t^3 (C^2, max slope
/// 15/8). chi_k(x) = chi(x - k) taken modulo L, and the translates sum to 2.
struct Partition {
    int period = 8;

    explicit Partition(int L);
    explicit Partition(const DomainSpec& strip);

    static double smoothstep(double t);
    static double profile(double y);
    static constexpr double max_slope = 15.0 / 8.0;

    double chi(int k, double x) const;
    double sum(double x) const;
    /// chi_k sampled at the positions of a field's samples.
    ScalarField cutoff(int k, const GridSpec& g, Staggering s) const;

    XWindow unit(int k) const { return {double(k), double(k + 1)}; }
    XWindow star(int k) const { return {double(k - 1), double(k + 2)}; }
    XWindow omega(int n) const { return {double(-n), double(n)}; }

    /// Equivalence constant C_chi with |chi_k f|_{m} <= C_chi |f|_{m, U_k*}:
    /// 1 for m = 0, sqrt(1 + 4 (15/8)^2) for m = 1.
    static double equivalence_constant(int m);
};

struct NormReport {
    std::string name;
    double value = 0.0;
    std::vector<double> per_window;
    /// name,value,w0,w1,...
    std::string to_csv() const;
};

NormReport uloc_norm(const ScalarField& f, int m, const Partition& P);
NormReport uloc_norm(const VelocityField& u, int m, const Partition& P);

struct WindowEnergyReport {
    double lhs = 0.0;  // |f|_{L2(Omega_n)}
    double rhs = 0.0;  // sqrt(2) n^{1/2} |f|_{L2_uloc}
    double ratio = 0.0;
    bool violation = false;
};

WindowEnergyReport window_energy_bound(const ScalarField& f, int n, const Partition& P);

namespace detail {
void clear_norm_caches();
}

}  // namespace stt
