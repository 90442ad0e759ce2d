#include "stt/stokes.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stt/mac_stencil.hpp"

namespace stt {

void StokesConfig::validate() const {
    if (!(linear_solver_tolerance > 0.0 && linear_solver_tolerance < 1e-4))
        throw DomainError("linear_solver_tolerance must lie in (0, 1e-4)");
    if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    if (!std::isfinite(flux_target)) throw DomainError("flux_target must be finite");
}

std::string SolverStats::to_text() const {
    std::ostringstream os;
    os.precision(17);
    os << "iterations = " << iterations << "\n"
       << "residual = " << residual << "\n"
       << "divergence = " << divergence << "\n"
       << "flux_error = " << flux_error << "\n"
       << "tolerance = " << tolerance << "\n";
    return os.str();
}

StokesSolution solve_stokes(const VelocityField& f, const StokesConfig& cfg) {
    return f.domain().periodic() ? solve_stokes_strip(f, cfg) : solve_stokes_bounded(f, cfg);
}

StokesSolution solve_buoyancy(const ScalarField& rho, const StokesConfig& cfg) {
    return solve_stokes(mac::buoyancy_forcing(rho), cfg);
}

namespace {

StokesSolution parabolic_profile(double amplitude, double slope, const GridSpec& grid) {
    if (!grid.domain.periodic())
        throw DomainError("Poiseuille solutions live on the strip");
    StokesSolution s;
    s.u = VelocityField(grid);
    for (int i = 0; i < grid.nx; ++i)
        for (int k = 0; k < grid.nz; ++k) {
            const double z = (k + 0.5) * grid.hz;
            s.u.u1(i, k) = amplitude * z * (1.0 - z);
        }
    s.p = ScalarField(grid, Staggering::Center);
    s.pressure_slope = slope;
    s.residual_norm = momentum_residual(s.u, s.p, VelocityField(grid), slope);
    const auto prof = flux_profile(s.u);
    s.flux = prof.front();
    s.stats.residual = s.residual_norm;
    return s;
}

}  // namespace

StokesSolution poiseuille(double phi, const GridSpec& grid) {
    double m = 0.0;
    for (int k = 0; k < grid.nz; ++k) {
        const double z = (k + 0.5) * grid.hz;
        m += z * (1.0 - z);
    }
    m *= grid.hz;
    const double amplitude = phi / m;
    return parabolic_profile(amplitude, -2.0 * amplitude, grid);
}

StokesSolution poiseuille_sampled(double phi, const GridSpec& grid) {
    return parabolic_profile(6.0 * phi, -12.0 * phi, grid);
}

std::vector<double> flux_profile(const VelocityField& u) {
    const ScalarField& u1 = u.u1;
    std::vector<double> out(static_cast<std::size_t>(u1.nx_samples()), 0.0);
    const double hz = u.grid().hz;
    for (int i = 0; i < u1.nx_samples(); ++i) {
        double acc = 0.0;
        for (int k = 0; k < u1.nz_samples(); ++k) acc += u1(i, k);
        out[static_cast<std::size_t>(i)] = hz * acc;
    }
    return out;
}

double check_compatibility(const ScalarField& g) {
    if (g.staggering() != Staggering::Center)
        throw DomainError("compatibility check expects a cell-centered field");
    double acc = 0.0;
    for (double v : g.values()) acc += v;
    return acc * g.grid().cell_area();
}

double momentum_residual(const VelocityField& u, const ScalarField& p, const VelocityField& f, double slope) {
    const VelocityField lhs = mac::apply_momentum(u, p, slope);
    const GridSpec& g = u.grid();
    double r = 0.0;
    for (int i = mac::u1_first_column(g); i < mac::u1_end_column(g); ++i)
        for (int k = 0; k < g.nz; ++k) r = std::max(r, std::abs(lhs.u1(i, k) - f.u1(i, k)));
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) r = std::max(r, std::abs(lhs.u2(i, k) - f.u2(i, k)));
    return r;
}

namespace detail {
void clear_rect_cache();
void clear_strip_cache();
void clear_stokes_caches() {
    clear_rect_cache();
    clear_strip_cache();
}
}  // namespace detail

}  // namespace stt
