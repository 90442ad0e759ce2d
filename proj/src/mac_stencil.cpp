#include "stt/mac_stencil.hpp"

namespace stt::mac {

VelocityField apply_momentum(const VelocityField& u, const ScalarField& p, double slope) {
    const GridSpec& g = u.grid();
    VelocityField out(g);
    for (int i = u1_first_column(g); i < u1_end_column(g); ++i)
        for (int k = 0; k < g.nz; ++k) {
            double acc = slope;
            u1_laplacian(g, i, k, [&](int a, int b, double c) { acc += c * u.u1(a, b); });
            u1_gradient(g, i, k, [&](int a, int b, double c) { acc += c * p(a, b); });
            out.u1(i, k) = acc;
        }
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) {
            double acc = 0.0;
            u2_laplacian(g, i, k, [&](int a, int b, double c) { acc += c * u.u2(a, b); });
            u2_gradient(g, i, k, [&](int a, int b, double c) { acc += c * p(a, b); });
            out.u2(i, k) = acc;
        }
    return out;
}

VelocityField buoyancy_forcing(const ScalarField& rho) {
    if (rho.staggering() != Staggering::Center)
        throw DomainError("buoyancy forcing needs a cell-centered density");
    const GridSpec& g = rho.grid();
    VelocityField f(g);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) f.u2(i, k) = -0.5 * (rho(i, k - 1) + rho(i, k));
    return f;
}

}  // namespace stt::mac
