#pragma once

// Steady Stokes solvers on the MAC grid.
//
//   -Lap u + grad p = f,   div u = 0,   u = 0 on the walls
//
// Rectangle: full saddle-point system with one pressure pinned (mean removed
// afterwards), factored once per grid with sparse LU. Strip: DFT in x, one
// small saddle system per wavenumber; the zero wavenumber carries the flux
// constraint and the unknown mean pressure slope.

#include <memory>
#include <string>
#include <vector>

#include "stt/domain.hpp"

namespace stt {

struct StokesConfig {
    double linear_solver_tolerance = 1e-10;  // relative to max(1, |f|_inf)
    int max_iterations = 8;                  // iterative-refinement sweeps
    double flux_target = 0.0;                // strip only

    void validate() const;
};

struct SolverStats {
    int iterations = 0;
    double residual = 0.0;    // max-norm momentum residual
    double divergence = 0.0;  // max |div u|
    double flux_error = 0.0;  // strip only
    double tolerance = 0.0;   // absolute threshold that was enforced

    /// Plain "key = value" lines.
    std::string to_text() const;
};

class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double achieved) : std::runtime_error(what), achieved_residual(achieved) {}
    double achieved_residual;
};

struct StokesSolution {
    VelocityField u;
    ScalarField p;                // periodic / zero-mean part
    double pressure_slope = 0.0;  // strip: p_total = p + slope * x
    double residual_norm = 0.0;
    double flux = 0.0;            // strip: mean of flux_profile
    SolverStats stats;
};

StokesSolution solve_stokes_bounded(const VelocityField& f, const StokesConfig& cfg = {});
StokesSolution solve_stokes_strip(const VelocityField& f, const StokesConfig& cfg = {});

/// Dispatches on the forcing's domain kind.
StokesSolution solve_stokes(const VelocityField& f, const StokesConfig& cfg = {});

/// Stokes solve for buoyancy -rho e_z (two-point mean onto z-faces).
StokesSolution solve_buoyancy(const ScalarField& rho, const StokesConfig& cfg = {});

/// Discrete Poiseuille solution with discrete flux exactly phi: u1 = A z(1-z)
/// sampled at cell centers with A = phi / (hz * sum_k z_k (1 - z_k)), which
/// tends to 6 phi; pressure slope -2A.
StokesSolution poiseuille(double phi, const GridSpec& grid);

/// The continuum profile 6 phi z (1-z) sampled pointwise, pressure slope
/// -12 phi. Residual-exact as well; its midpoint flux is phi (1 + hz^2 / 2).
StokesSolution poiseuille_sampled(double phi, const GridSpec& grid);

/// Midpoint quadrature of int_0^1 u1 dz for every x-face column.
std::vector<double> flux_profile(const VelocityField& u);

/// Midpoint quadrature of the integral of a cell-centered field.
double check_compatibility(const ScalarField& g);

/// Max-norm of -Lap_h u + grad_h p + slope e_x - f over the faces carrying a
/// momentum equation.
double momentum_residual(const VelocityField& u, const ScalarField& p, const VelocityField& f, double slope = 0.0);

namespace detail {
// Exposed for tests: drop cached factorizations.
void clear_stokes_caches();
}  // namespace detail

}  // namespace stt
