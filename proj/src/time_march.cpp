#include <algorithm>
#include <cmath>

#include "stt/coupling.hpp"
#include "stt/norms.hpp"

namespace stt {

double w1inf_norm(const VelocityField& u) { return lq_norm(u, INFINITY) + gradient_sup(u); }

SeriesRow measure(double t, const ScalarField& rho, const StokesSolution& s) {
    SeriesRow r;
    r.t = t;
    r.rho_l2 = lq_norm(rho, 2.0);
    r.rho_linf = lq_norm(rho, INFINITY);
    r.u_linf = lq_norm(s.u, INFINITY);
    r.u_h1 = h1_norm(s.u);
    r.flux = s.flux;
    const GridSpec& g = rho.grid();
    double pe = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        double col = 0.0;
        for (int k = 0; k < g.nz; ++k) col += rho(i, k) * (k + 0.5) * g.hz;
        pe += col;
    }
    r.potential_energy = pe * g.cell_area();
    r.rho_min = rho.min();
    r.rho_max = rho.max();
    r.max_div = s.stats.divergence;
    return r;
}

double density_gap(const ScalarField& a, const ScalarField& b) {
    const ScalarField d = a - b;
    if (d.domain().periodic()) return uloc_norm(d, -1, Partition(d.domain())).value;
    return hneg1_norm(d);
}

MarchResult time_march(const ScalarField& rho0, double T, double dt, const MarchOptions& opt) {
    if (!(T >= 0.0) || !(dt > 0.0)) throw CouplingError("time_march needs T >= 0 and dt > 0");
    if (rho0.staggering() != Staggering::Center) throw CouplingError("density must be cell-centered");
    const int steps = T == 0.0 ? 0 : std::max(1, static_cast<int>(std::llround(std::ceil(T / dt - 1e-9))));
    const double h = steps ? T / steps : 0.0;
    TransportConfig tc;
    tc.dt = steps ? h / std::max(1, opt.substeps) : 1.0;

    MarchResult res;
    SimulationState st;
    st.rho = rho0;
    for (int n = 0;; ++n) {
        st.t = n * h;
        StokesSolution s = solve_buoyancy(st.rho, opt.stokes);
        const SeriesRow row = measure(st.t, st.rho, s);
        st.u = std::move(s.u);
        st.p = std::move(s.p);
        st.pressure_slope = s.pressure_slope;
        if (!res.series.empty() && row.potential_energy > res.series.back().potential_energy)
            res.energy_monotone = false;
        res.series.push_back(row);
        if (opt.observer) opt.observer(st, row);
        if (n == steps) break;
        st.rho = push_forward(st.rho, SteadyVelocity(st.u), st.t, st.t + h, tc);
    }
    res.final_state = std::move(st);
    return res;
}

}  // namespace stt
