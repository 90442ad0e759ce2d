#include "stt/transport.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>

#include "stt/kernels.hpp"
#include "stt/snapshot.hpp"

namespace stt {

void TransportConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw TransportError("transport dt must be positive");
}

SteadyVelocity::SteadyVelocity(VelocityField u) : u_(std::move(u)) {}

Vec2 SteadyVelocity::velocity(double, Vec2 point) const { return interpolate_velocity(u_, point); }

VelocityHistory::VelocityHistory(std::vector<double> times, std::vector<VelocityField> fields)
    : times_(std::move(times)), fields_(std::move(fields)) {
    if (times_.empty() || times_.size() != fields_.size())
        throw TransportError("velocity history needs one field per time node");
    for (std::size_t j = 1; j < times_.size(); ++j) {
        if (!(times_[j] > times_[j - 1])) throw TransportError("velocity history times must increase");
        if (!(fields_[j].grid() == fields_[0].grid())) throw TransportError("velocity history grids differ");
    }
}

Vec2 VelocityHistory::velocity(double t, Vec2 point) const {
    if (t <= times_.front()) return interpolate_velocity(fields_.front(), point);
    if (t >= times_.back()) return interpolate_velocity(fields_.back(), point);
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t j = static_cast<std::size_t>(it - times_.begin());
    const double w = (t - times_[j - 1]) / (times_[j] - times_[j - 1]);
    const Vec2 a = interpolate_velocity(fields_[j - 1], point);
    const Vec2 b = interpolate_velocity(fields_[j], point);
    return {(1.0 - w) * a.x + w * b.x, (1.0 - w) * a.z + w * b.z};
}

Vec2 FlowMap::seed(int i, int k) const { return {(i + 0.5) * grid.hx, (k + 0.5) * grid.hz}; }

Vec2 FlowMap::image(int i, int k) const {
    const std::size_t j = static_cast<std::size_t>(i) * grid.nz + k;
    const Vec2 s = seed(i, k);
    return {s.x + dx[j], s.z + dz[j]};
}

Vec2 FlowMap::image_wrapped(int i, int k) const {
    Vec2 p = image(i, k);
    p.x = wrap_x(grid.domain, p.x);
    return p;
}

namespace {

Vec2 clamp_point(const DomainSpec& d, Vec2 p) {
    p.z = std::clamp(p.z, 0.0, 1.0);
    if (!d.periodic()) p.x = std::clamp(p.x, 0.0, d.x_extent);
    return p;
}

Vec2 eval(const VelocityProvider& u, double t, Vec2 p) {
    const DomainSpec& d = u.domain();
    return u.velocity(t, {wrap_x(d, p.x), p.z});
}

}  // namespace

Vec2 trace_point(const VelocityProvider& u, double t0, double t1, Vec2 p, const TransportConfig& cfg) {
    cfg.validate();
    const double span = t1 - t0;
    if (span == 0.0) return p;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / cfg.dt - 1e-9)));
    const double h = span / n;
    const DomainSpec& d = u.domain();
    for (int s = 0; s < n; ++s) {
        const double t = t0 + s * h;
        const Vec2 k1 = eval(u, t, p);
        const Vec2 p2 = clamp_point(d, {p.x + 0.5 * h * k1.x, p.z + 0.5 * h * k1.z});
        const Vec2 k2 = eval(u, t + 0.5 * h, p2);
        const Vec2 p3 = clamp_point(d, {p.x + 0.5 * h * k2.x, p.z + 0.5 * h * k2.z});
        const Vec2 k3 = eval(u, t + 0.5 * h, p3);
        const Vec2 p4 = clamp_point(d, {p.x + h * k3.x, p.z + h * k3.z});
        const Vec2 k4 = eval(u, t + h, p4);
        p = clamp_point(d, {p.x + h / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                            p.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z)});
        if (!std::isfinite(p.x) || !std::isfinite(p.z))
            throw TransportError("non-finite trajectory at t = " + std::to_string(t));
    }
    return p;
}

FlowMap integrate_flow(const VelocityProvider& u, const GridSpec& grid, double t0, double t1,
                       const TransportConfig& cfg) {
    cfg.validate();
    if (!(u.domain() == grid.domain)) throw TransportError("velocity and grid domains differ");
    FlowMap X;
    X.grid = grid;
    X.t0 = t0;
    X.t1 = t1;
    X.dx.assign(static_cast<std::size_t>(grid.nx) * grid.nz, 0.0);
    X.dz.assign(X.dx.size(), 0.0);
    kernels::trace_seeds(u, grid, t0, t1, cfg, X.dx.data(), X.dz.data());
    return X;
}

ScalarField compose(const ScalarField& rho, const FlowMap& feet) {
    if (rho.staggering() != Staggering::Center || !(rho.grid() == feet.grid))
        throw TransportError("compose needs a cell-centered field on the flow map grid");
    std::vector<double> out(rho.size());
    kernels::sample_feet(rho, feet.dx.data(), feet.dz.data(), out.data());
    return ScalarField(rho.grid(), Staggering::Center, std::move(out));
}

ScalarField push_forward(const ScalarField& rho, const VelocityProvider& u, double t0, double t1,
                         const TransportConfig& cfg) {
    return compose(rho, integrate_flow(u, rho.grid(), t1, t0, cfg));
}

double composition_defect(const VelocityProvider& u, const GridSpec& grid, double r, double s, double t, int steps) {
    if (steps < 1 || r == s || s == t) throw TransportError("composition_defect needs steps >= 1 and distinct times");
    auto leg = [&](double a, double b, Vec2 p) {
        TransportConfig c;
        c.dt = std::abs(b - a) / steps;
        return trace_point(u, a, b, p, c);
    };
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i)
        for (int k = 0; k < grid.nz; ++k) {
            const Vec2 x{(i + 0.5) * grid.hx, (k + 0.5) * grid.hz};
            const Vec2 a = leg(s, t, leg(r, s, x));
            const Vec2 b = leg(r, t, x);
            worst = std::max(worst, std::hypot(a.x - b.x, a.z - b.z));
        }
    return worst;
}

double gradient_sup(const VelocityField& u) {
    const GridSpec& g = u.grid();
    const bool per = g.domain.periodic();
    double d1x = 0.0, d1z = 0.0, d2x = 0.0, d2z = 0.0;
    const ScalarField& a = u.u1;
    const ScalarField& b = u.u2;
    // u1: nodal in x, centered with wall zeros in z
    for (int i = 0; i < a.nx_samples(); ++i) {
        const int ip = per ? (i + 1) % g.nx : i + 1;
        for (int k = 0; k < g.nz; ++k) {
            if (ip < a.nx_samples()) d1x = std::max(d1x, std::abs(a(ip, k) - a(i, k)) / g.hx);
            if (k + 1 < g.nz) d1z = std::max(d1z, std::abs(a(i, k + 1) - a(i, k)) / g.hz);
        }
        d1z = std::max({d1z, std::abs(a(i, 0)) / (0.5 * g.hz), std::abs(a(i, g.nz - 1)) / (0.5 * g.hz)});
    }
    // u2: centered in x (walls on the rectangle), nodal in z
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k <= g.nz; ++k) {
            if (k < g.nz) d2z = std::max(d2z, std::abs(b(i, k + 1) - b(i, k)) / g.hz);
            if (per) {
                d2x = std::max(d2x, std::abs(b((i + 1) % g.nx, k) - b(i, k)) / g.hx);
            } else {
                if (i + 1 < g.nx) d2x = std::max(d2x, std::abs(b(i + 1, k) - b(i, k)) / g.hx);
                if (i == 0 || i == g.nx - 1) d2x = std::max(d2x, std::abs(b(i, k)) / (0.5 * g.hx));
            }
        }
    return std::sqrt(d1x * d1x + d1z * d1z + d2x * d2x + d2z * d2z);
}

LipschitzReport lipschitz_growth(const FlowMap& X, double grad_sup) {
    const GridSpec& g = X.grid;
    const bool per = g.domain.periodic();
    LipschitzReport r;
    r.measured_lip = 0.0;
    auto edge = [&](int i, int k, int i2, int k2, double len) {
        const Vec2 a = X.image(i, k);
        Vec2 b = X.image(i2, k2);
        if (i2 < i) b.x += g.domain.x_extent;  // periodic neighbour across the seam
        r.measured_lip = std::max(r.measured_lip, std::hypot(b.x - a.x, b.z - a.z) / len);
    };
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            if (i + 1 < g.nx)
                edge(i, k, i + 1, k, g.hx);
            else if (per)
                edge(i, k, 0, k, g.hx);
            if (k + 1 < g.nz) edge(i, k, i, k + 1, g.hz);
        }
    r.bound = std::exp(std::abs(X.t1 - X.t0) * grad_sup);
    r.violation = r.measured_lip > r.bound * (1.0 + 1e-6);
    return r;
}

LipschitzReport lipschitz_growth(const FlowMap& X, const VelocityField& u) {
    return lipschitz_growth(X, gradient_sup(u));
}

namespace {

double map_gap(const FlowMap& X1, const FlowMap& X2, NormKind q) {
    if (!(X1.grid == X2.grid) || X1.t0 != X2.t0 || X1.t1 != X2.t1)
        throw TransportError("flow maps over different intervals or grids");
    double acc = 0.0;
    for (std::size_t j = 0; j < X1.size(); ++j) {
        const double e = std::hypot(X1.dx[j] - X2.dx[j], X1.dz[j] - X2.dz[j]);
        acc = q == NormKind::Linf ? std::max(acc, e) : acc + e * e;
    }
    return q == NormKind::Linf ? acc : std::sqrt(acc * X1.grid.cell_area());
}

// Wall samples are zero, so uniform cell-area weights equal the nodal rule
// along the staggered axis.
double face_l2_sq(const ScalarField& f) {
    const GridSpec& g = f.grid();
    double acc = 0.0;
    for (int i = 0; i < f.nx_samples(); ++i)
        for (int k = 0; k < f.nz_samples(); ++k) acc += f(i, k) * f(i, k);
    return acc * g.cell_area();
}

double field_gap(const VelocityField& u1, const VelocityField& u2, NormKind q) {
    const VelocityField d = u1 - u2;
    if (q == NormKind::Linf) {
        double a = 0.0, b = 0.0;
        for (double v : d.u1.values()) a = std::max(a, std::abs(v));
        for (double v : d.u2.values()) b = std::max(b, std::abs(v));
        return std::hypot(a, b);
    }
    return std::sqrt(face_l2_sq(d.u1) + face_l2_sq(d.u2));
}

}  // namespace

FlowStabilityReport flow_stability(const FlowMap& X1, const FlowMap& X2, double grad_sup1, double velocity_gap,
                                   NormKind q) {
    FlowStabilityReport r;
    r.lhs = map_gap(X1, X2, q);
    const double t = std::abs(X1.t1 - X1.t0);
    r.rhs = t * std::exp(t * grad_sup1) * velocity_gap;
    r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? INFINITY : 0.0);
    r.violation = r.lhs > r.rhs * (1.0 + 1e-6) + 1e-14;
    return r;
}

FlowStabilityReport flow_stability(const FlowMap& X1, const FlowMap& X2, const VelocityField& u1,
                                   const VelocityField& u2, NormKind q) {
    return flow_stability(X1, X2, gradient_sup(u1), field_gap(u1, u2, q), q);
}

void write_flow_map(std::ostream& os, const FlowMap& X) {
    SnapshotHeader h;
    h.kind = X.grid.domain.kind;
    h.staggering = Staggering::FlowMap;
    h.nx = static_cast<std::uint32_t>(X.grid.nx);
    h.nz = static_cast<std::uint32_t>(X.grid.nz);
    h.x_extent = X.grid.domain.x_extent;
    std::vector<double> v(2 * X.size());
    for (std::size_t j = 0; j < X.size(); ++j) {
        v[2 * j] = X.dx[j];
        v[2 * j + 1] = X.dz[j];
    }
    write_raw_snapshot(os, h, v);
}

FlowMap read_flow_map(std::istream& is) {
    RawSnapshot raw = read_raw_snapshot(is);
    if (raw.header.staggering != Staggering::FlowMap) throw SnapshotError("snapshot is not a flow map");
    FlowMap X;
    X.grid = raw.grid();
    const std::size_t n = raw.values.size() / 2;
    X.dx.resize(n);
    X.dz.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        X.dx[j] = raw.values[2 * j];
        X.dz[j] = raw.values[2 * j + 1];
    }
    return X;
}

}  // namespace stt
