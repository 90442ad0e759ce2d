#include <algorithm>
#include <cmath>
#include <sstream>

#include "stt/coupling.hpp"
#include "stt/norms.hpp"

namespace stt {

double contraction_estimate(double B, double M, double T, bool strip) {
    double e = B * T * std::exp(B * T);
    if (strip) e *= std::sqrt(1.0 + M * T);
    return e;
}

double choose_window(double B, double M, bool strip, double target) {
    if (!(target > 0.0)) throw CouplingError("window target must be positive");
    if (B <= 0.0) return INFINITY;
    double lo = 0.0, hi = 1.0 / B;
    while (contraction_estimate(B, M, hi, strip) < target) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (contraction_estimate(B, M, mid, strip) <= target ? lo : hi) = mid;
    }
    return lo;
}

PicardResult picard_solve(const ScalarField& rho0, double T, const PicardOptions& opt) {
    if (!(T > 0.0)) throw CouplingError("picard_solve needs T > 0");
    if (opt.n_time_nodes < 2) throw CouplingError("picard_solve needs at least 2 time nodes");
    if (opt.max_picard < 1) throw CouplingError("max_picard must be >= 1");
    if (rho0.staggering() != Staggering::Center || !rho0.all_finite())
        throw CouplingError("initial density must be a finite cell-centered field");
    const bool strip = rho0.domain().periodic();
    const int n = opt.n_time_nodes;
    std::vector<double> times(n);
    for (int j = 0; j < n; ++j) times[j] = T * j / (n - 1);
    TransportConfig tc;
    tc.dt = T / (n - 1) / std::max(1, opt.substeps);

    PicardResult res;
    PicardTrace& tr = res.trace;
    tr.T = T;
    tr.diff_norm = strip ? "hneg1_uloc" : "hneg1";
    const double rho0_inf = lq_norm(rho0, INFINITY);
    double ratio_max = 0.0;

    std::vector<ScalarField> rho(n, rho0);
    std::vector<VelocityField> u(n);
    for (int N = 0; N < opt.max_picard; ++N) {
        for (int j = 0; j < n; ++j) {
            u[j] = solve_buoyancy(rho[j], opt.stokes).u;
            const double r = lq_norm(rho[j], INFINITY);
            if (r > 0.0) ratio_max = std::max(ratio_max, w1inf_norm(u[j]) / r);
            tr.M = std::max(tr.M, lq_norm(u[j], INFINITY));
        }
        if (opt.keep_iterates) tr.iterates.push_back({rho, u});
        const VelocityHistory hist(times, u);
        std::vector<ScalarField> next(n);
        double delta = 0.0;
        for (int j = 0; j < n; ++j) {
            next[j] = push_forward(rho0, hist, 0.0, times[j], tc);
            delta = std::max(delta, density_gap(next[j], rho[j]));
        }
        if (!tr.diffs.empty()) tr.ratios.push_back(tr.diffs.back() > 0.0 ? delta / tr.diffs.back() : 0.0);
        tr.diffs.push_back(delta);
        rho = std::move(next);
        tr.iterations = N + 1;
        if (delta < opt.tol) {
            tr.converged = true;
            break;
        }
    }
    tr.B = ratio_max * rho0_inf;
    tr.contraction_estimate = contraction_estimate(tr.B, tr.M, T, strip);

    if (!tr.converged) {
        const std::size_t m = tr.diffs.size();
        if (m < 2 || tr.diffs[m - 1] >= tr.diffs[m - 2]) {
            std::ostringstream msg;
            msg << "Picard iteration stalled after " << tr.iterations << " iterations (delta " << tr.diffs.back()
                << ", contraction estimate " << tr.contraction_estimate << "); use a smaller window T";
            throw CouplingError(msg.str());
        }
    }

    for (int j = 0; j < n; ++j) {
        StokesSolution s = solve_buoyancy(rho[j], opt.stokes);
        res.series.push_back(measure(times[j], rho[j], s));
        res.states.push_back({times[j], rho[j], std::move(s.u), std::move(s.p), s.pressure_slope});
    }
    if (opt.keep_iterates) {
        PicardIterate last{rho, {}};
        for (const auto& s : res.states) last.u.push_back(s.u);
        tr.iterates.push_back(std::move(last));
    }
    return res;
}

}  // namespace stt
