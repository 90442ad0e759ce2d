#include <algorithm>
#include <cmath>

#include "stt/coupling.hpp"

namespace stt {

double envelope_constant(const std::vector<double>& t, const std::vector<double>& G) {
    double C = 1.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!(G[i] > 0.0)) continue;
        auto ok = [&](double c) { return std::log(c) + c * t[i] >= std::log(G[i]); };
        if (ok(C)) continue;
        double lo = C, hi = 2.0 * C;
        while (!ok(hi)) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (ok(mid) ? hi : lo) = mid;
        }
        C = hi;
    }
    return C;
}

StabilityReport stability_experiment(const ScalarField& rho01, const ScalarField& rho02, const StabilityOptions& opt) {
    if (!(rho01.grid() == rho02.grid())) throw CouplingError("stability pair must share one grid");
    StabilityReport r;
    r.norm = rho01.domain().periodic() ? "hneg1_uloc" : "hneg1";

    std::vector<ScalarField> a, b;
    MarchOptions mo = opt.march;
    mo.observer = [&](const SimulationState& s, const SeriesRow&) { a.push_back(s.rho); };
    time_march(rho01, opt.T, opt.dt, mo);
    mo.observer = [&](const SimulationState& s, const SeriesRow&) {
        b.push_back(s.rho);
        r.t.push_back(s.t);
    };
    time_march(rho02, opt.T, opt.dt, mo);

    const double g0 = density_gap(rho01, rho02);
    r.absolute = !(g0 > 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double g = density_gap(a[i], b[i]);
        r.G.push_back(r.absolute ? g : g / g0);
    }

    // least squares of log G over the samples with G > 0
    double n = 0, st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = 0; i < r.G.size(); ++i) {
        if (!(r.G[i] > 0.0)) continue;
        const double y = std::log(r.G[i]);
        n += 1;
        st += r.t[i];
        sy += y;
        stt += r.t[i] * r.t[i];
        sty += r.t[i] * y;
    }
    if (n >= 2 && n * stt - st * st > 0.0) {
        r.slope = (n * sty - st * sy) / (n * stt - st * st);
        r.intercept = (sy - r.slope * st) / n;
    }
    r.envelope_C = envelope_constant(r.t, r.G);
    r.affine_envelope = r.absolute || r.envelope_C <= opt.envelope_limit;
    return r;
}

}  // namespace stt
