#pragma once

// Shared MAC stencils for the velocity Laplacian, pressure gradient and
// divergence. The matrix assembly in both Stokes solvers and the a-posteriori
// residual evaluation enumerate the same coefficients from here.
//
// -Lap_h on u1 uses the standard 5-point stencil in the interior. The first
// and last u1 rows sit half a cell from the no-slip walls z = 0, 1; there the
// z-part is the non-uniform three-point second difference through the wall
// value, (4/3)(3 u_0 - u_1) / hz^2, which is exact for quadratics. The same
// treatment applies to u2 next to the rectangle's side walls x = 0, Lx.

#include "stt/domain.hpp"

namespace stt::mac {

// emit(i, k, coef) is called for every unknown sample in the stencil; wall
// samples (identically zero) are skipped.
template <class Emit>
void u1_laplacian(const GridSpec& g, int i, int k, Emit&& emit) {
    const double ax = 1.0 / (g.hx * g.hx);
    const double az = 1.0 / (g.hz * g.hz);
    double self = 2.0 * ax;
    if (g.domain.periodic()) {
        emit((i - 1 + g.nx) % g.nx, k, -ax);
        emit((i + 1) % g.nx, k, -ax);
    } else {
        if (i - 1 > 0) emit(i - 1, k, -ax);
        if (i + 1 < g.nx) emit(i + 1, k, -ax);
    }
    if (k == 0) {
        self += 4.0 * az;
        emit(i, 1, -4.0 / 3.0 * az);
    } else if (k == g.nz - 1) {
        self += 4.0 * az;
        emit(i, g.nz - 2, -4.0 / 3.0 * az);
    } else {
        self += 2.0 * az;
        emit(i, k - 1, -az);
        emit(i, k + 1, -az);
    }
    emit(i, k, self);
}

template <class Emit>
void u2_laplacian(const GridSpec& g, int i, int k, Emit&& emit) {
    const double ax = 1.0 / (g.hx * g.hx);
    const double az = 1.0 / (g.hz * g.hz);
    double self = 2.0 * az;
    if (k - 1 > 0) emit(i, k - 1, -az);
    if (k + 1 < g.nz) emit(i, k + 1, -az);
    if (g.domain.periodic()) {
        self += 2.0 * ax;
        emit((i - 1 + g.nx) % g.nx, k, -ax);
        emit((i + 1) % g.nx, k, -ax);
    } else if (i == 0) {
        self += 4.0 * ax;
        emit(1, k, -4.0 / 3.0 * ax);
    } else if (i == g.nx - 1) {
        self += 4.0 * ax;
        emit(g.nx - 2, k, -4.0 / 3.0 * ax);
    } else {
        self += 2.0 * ax;
        emit(i - 1, k, -ax);
        emit(i + 1, k, -ax);
    }
    emit(i, k, self);
}

// Pressure gradient at x-face (i, k): (p(i,k) - p(i-1,k)) / hx.
template <class Emit>
void u1_gradient(const GridSpec& g, int i, int k, Emit&& emit) {
    emit(i % g.nx, k, 1.0 / g.hx);
    emit((i - 1 + g.nx) % g.nx, k, -1.0 / g.hx);
}

// Pressure gradient at z-face (i, k): (p(i,k) - p(i,k-1)) / hz.
template <class Emit>
void u2_gradient(const GridSpec& g, int i, int k, Emit&& emit) {
    emit(i, k, 1.0 / g.hz);
    emit(i, k - 1, -1.0 / g.hz);
}

/// x-faces carrying a momentum equation: all columns on the strip, interior
/// columns 1..nx-1 on the rectangle.
inline int u1_first_column(const GridSpec& g) { return g.domain.periodic() ? 0 : 1; }
inline int u1_end_column(const GridSpec& g) { return g.nx; }

/// -Lap_h u + grad_h p, with an extra uniform x-gradient `slope` (strip
/// pressure = periodic part + slope * x). Wall samples of the result are 0.
VelocityField apply_momentum(const VelocityField& u, const ScalarField& p, double slope);

/// Cell-centered buoyancy -rho e_z moved to interior z-faces by the
/// two-point mean; u1 forcing is zero.
VelocityField buoyancy_forcing(const ScalarField& rho);

}  // namespace stt::mac
