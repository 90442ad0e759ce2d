#include "stt/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "stt/kernels.hpp"

namespace stt {

namespace {

struct Diff {
    int lo;  // -1: wall value 0
    int hi;
    double inv;
    double w;
};

std::vector<double> value_weights(AxisRule r, int n, double h) {
    std::vector<double> w(static_cast<std::size_t>(n), h);
    if (r == AxisRule::Nodal) {
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

std::vector<Diff> diffs(AxisRule r, int n, double h) {
    std::vector<Diff> d;
    switch (r) {
        case AxisRule::Periodic:
            for (int i = 0; i < n; ++i) d.push_back({i, (i + 1) % n, 1.0 / h, h});
            break;
        case AxisRule::Nodal:
            for (int i = 0; i + 1 < n; ++i) d.push_back({i, i + 1, 1.0 / h, h});
            break;
        case AxisRule::CenteredFree:
            for (int i = 0; i + 1 < n; ++i) d.push_back({i, i + 1, 1.0 / h, (i == 0 || i == n - 2) ? 1.5 * h : h});
            break;
        case AxisRule::CenteredWall:
            d.push_back({-1, 0, 2.0 / h, 0.5 * h});
            for (int i = 0; i + 1 < n; ++i) d.push_back({i, i + 1, 1.0 / h, h});
            d.push_back({n - 1, -1, 2.0 / h, 0.5 * h});
            break;
    }
    return d;
}

// Whole-domain mask unless a window is given (strip only).
std::vector<char> x_mask(const ScalarField& f, const XWindow* win) {
    std::vector<char> m(static_cast<std::size_t>(f.nx_samples()), 1);
    if (!win) return m;
    const GridSpec& g = f.grid();
    const double L = g.domain.x_extent;
    const double len = win->b - win->a;
    const double eps = 1e-9 * g.hx;
    for (int i = 0; i < f.nx_samples(); ++i) {
        double y = std::fmod(f.position(i, 0).x - win->a, L);
        if (y < 0.0) y += L;
        if (y > L - eps) y -= L;  // sample sitting on the left edge
        m[i] = (y >= -eps && y <= len + eps) ? 1 : 0;
    }
    return m;
}

double sum_sq(const ScalarField& f, AxisRules rules, int m, const XWindow* win) {
    const GridSpec& g = f.grid();
    const int nxs = f.nx_samples(), nzs = f.nz_samples();
    const std::vector<char> in = x_mask(f, win);
    std::vector<double> wx = value_weights(rules.x, nxs, g.hx);
    const std::vector<double> wz = value_weights(rules.z, nzs, g.hz);
    for (int i = 0; i < nxs; ++i)
        if (!in[i]) wx[i] = 0.0;
    const double* v = f.values().data();
    double total = kernels::tensor_dot(v, v, wx.data(), nxs, wz.data(), nzs);
    if (m == 0) return total;

    auto at = [&](int i, int k) { return (i < 0 || k < 0) ? 0.0 : f(i, k); };
    // x differences
    std::vector<Diff> dx = diffs(rules.x, nxs, g.hx);
    std::vector<double> wdx;
    std::vector<double> Dx;
    for (const Diff& d : dx) {
        const bool keep = (d.lo < 0 || in[d.lo]) && (d.hi < 0 || in[d.hi]);
        if (!keep) continue;
        wdx.push_back(d.w);
        for (int k = 0; k < nzs; ++k) Dx.push_back((at(d.hi, k) - at(d.lo, k)) * d.inv);
    }
    if (!wdx.empty())
        total += kernels::tensor_dot(Dx.data(), Dx.data(), wdx.data(), static_cast<int>(wdx.size()), wz.data(), nzs);
    // z differences
    const std::vector<Diff> dz = diffs(rules.z, nzs, g.hz);
    std::vector<double> wdz;
    for (const Diff& d : dz) wdz.push_back(d.w);
    const int ndz = static_cast<int>(dz.size());
    std::vector<double> Dz(static_cast<std::size_t>(nxs) * ndz);
    for (int i = 0; i < nxs; ++i)
        for (int j = 0; j < ndz; ++j) {
            const Diff& d = dz[j];
            const double hi = d.hi < 0 ? 0.0 : f(i, d.hi);
            const double lo = d.lo < 0 ? 0.0 : f(i, d.lo);
            Dz[static_cast<std::size_t>(i) * ndz + j] = (hi - lo) * d.inv;
        }
    total += kernels::tensor_dot(Dz.data(), Dz.data(), wx.data(), nxs, wdz.data(), ndz);
    return total;
}

void require_window_grid(const GridSpec& g) {
    if (!g.domain.periodic()) throw NormError("window norms need the periodic strip");
    if (g.nx % g.domain.period() != 0)
        throw NormError("window norms need nx divisible by the strip period");
}

}  // namespace

AxisRules default_rules(const ScalarField& f, bool velocity) {
    const bool per = f.domain().periodic();
    AxisRules r;
    switch (f.staggering()) {
        case Staggering::XFace:
            r.x = per ? AxisRule::Periodic : AxisRule::Nodal;
            r.z = velocity ? AxisRule::CenteredWall : AxisRule::CenteredFree;
            break;
        case Staggering::ZFace:
            r.x = per ? AxisRule::Periodic : (velocity ? AxisRule::CenteredWall : AxisRule::CenteredFree);
            r.z = AxisRule::Nodal;
            break;
        default:
            r.x = per ? AxisRule::Periodic : AxisRule::CenteredFree;
            r.z = AxisRule::CenteredFree;
    }
    return r;
}

double lq_norm(const ScalarField& f, double q) {
    if (std::isinf(q)) {
        double m = 0.0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    if (q == 2.0) return std::sqrt(sum_sq(f, default_rules(f), 0, nullptr));
    if (q == 1.0) {
        const AxisRules r = default_rules(f);
        const std::vector<double> wx = value_weights(r.x, f.nx_samples(), f.grid().hx);
        const std::vector<double> wz = value_weights(r.z, f.nz_samples(), f.grid().hz);
        std::vector<double> a(f.size());
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(f.values()[j]);
        const std::vector<double> ones(a.size(), 1.0);
        return kernels::tensor_dot(a.data(), ones.data(), wx.data(), f.nx_samples(), wz.data(), f.nz_samples());
    }
    throw NormError("lq_norm supports q = 1, 2, inf");
}

double lq_norm(const VelocityField& u, double q) {
    if (std::isinf(q)) return std::max(lq_norm(u.u1, q), lq_norm(u.u2, q));
    if (q == 2.0) return std::hypot(lq_norm(u.u1, 2.0), lq_norm(u.u2, 2.0));
    return lq_norm(u.u1, q) + lq_norm(u.u2, q);
}

double h1_norm(const ScalarField& f) { return h1_norm(f, default_rules(f)); }

double h1_norm(const ScalarField& f, AxisRules rules) { return std::sqrt(sum_sq(f, rules, 1, nullptr)); }

double h1_norm(const VelocityField& u) {
    return std::sqrt(sum_sq(u.u1, default_rules(u.u1, true), 1, nullptr) +
                     sum_sq(u.u2, default_rules(u.u2, true), 1, nullptr));
}

double hneg1_norm(const ScalarField& rho) {
    if (rho.staggering() != Staggering::Center) throw NormError("hneg1_norm needs a cell-centered field");
    const ScalarField w = helmholtz_solve(rho);
    const GridSpec& g = rho.grid();
    const std::vector<double> wx(static_cast<std::size_t>(g.nx), g.hx), wz(static_cast<std::size_t>(g.nz), g.hz);
    const double s = kernels::tensor_dot(rho.values().data(), w.values().data(), wx.data(), g.nx, wz.data(), g.nz);
    return std::sqrt(std::max(s, 0.0));
}

double window_norm(const ScalarField& f, int m, XWindow w, AxisRules rules) {
    require_window_grid(f.grid());
    if (m != 0 && m != 1) throw NormError("window_norm supports m = 0, 1");
    return std::sqrt(sum_sq(f, rules, m, &w));
}

double window_norm(const ScalarField& f, int m, XWindow w) { return window_norm(f, m, w, default_rules(f)); }

double window_norm(const VelocityField& u, int m, XWindow w) {
    const double a = window_norm(u.u1, m, w, default_rules(u.u1, true));
    const double b = window_norm(u.u2, m, w, default_rules(u.u2, true));
    return std::hypot(a, b);
}

std::string NormReport::to_csv() const {
    std::ostringstream os;
    char buf[32];
    os << name;
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << ',' << buf;
    for (double v : per_window) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << ',' << buf;
    }
    return os.str();
}

namespace {

ScalarField times(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid(), a.staggering());
    for (std::size_t j = 0; j < a.size(); ++j) out.values()[j] = a.values()[j] * b.values()[j];
    return out;
}

void require_strip(const DomainSpec& d, const Partition& P) {
    if (!d.periodic()) throw NormError("uniformly local norms need the periodic strip");
    if (d.period() != P.period) throw NormError("partition period does not match the strip");
}

}  // namespace

NormReport uloc_norm(const ScalarField& f, int m, const Partition& P) {
    require_strip(f.domain(), P);
    if (m < -1 || m > 1) throw NormError("uloc_norm supports m = -1, 0, 1");
    if (m == -1 && f.staggering() != Staggering::Center) throw NormError("m = -1 needs a cell-centered field");
    NormReport r;
    r.name = "uloc_m" + std::to_string(m);
    for (int k = 0; k < P.period; ++k) {
        const ScalarField g = times(P.cutoff(k, f.grid(), f.staggering()), f);
        double v = 0.0;
        if (m == -1)
            v = hneg1_norm(g);
        else if (m == 0)
            v = lq_norm(g, 2.0);
        else
            v = h1_norm(g, default_rules(f));
        r.per_window.push_back(v);
    }
    r.value = *std::max_element(r.per_window.begin(), r.per_window.end());
    return r;
}

NormReport uloc_norm(const VelocityField& u, int m, const Partition& P) {
    require_strip(u.domain(), P);
    if (m != 0 && m != 1) throw NormError("velocity uloc_norm supports m = 0, 1");
    NormReport r;
    r.name = "uloc_velocity_m" + std::to_string(m);
    for (int k = 0; k < P.period; ++k) {
        const VelocityField g(times(P.cutoff(k, u.grid(), Staggering::XFace), u.u1),
                              times(P.cutoff(k, u.grid(), Staggering::ZFace), u.u2));
        r.per_window.push_back(m == 0 ? lq_norm(g, 2.0) : h1_norm(g));
    }
    r.value = *std::max_element(r.per_window.begin(), r.per_window.end());
    return r;
}

WindowEnergyReport window_energy_bound(const ScalarField& f, int n, const Partition& P) {
    require_strip(f.domain(), P);
    if (n < 1 || 2 * n > P.period) throw NormError("window_energy_bound needs 1 <= n and 2n <= L");
    WindowEnergyReport r;
    r.lhs = window_norm(f, 0, P.omega(n));
    r.rhs = std::sqrt(2.0) * Partition::equivalence_constant(0) * std::sqrt(double(n)) * uloc_norm(f, 0, P).value;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : 0.0;
    r.violation = r.lhs > r.rhs * (1.0 + 1e-12) + 1e-300;
    return r;
}

}  // namespace stt
