#include "stt/domain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stt {

DomainSpec DomainSpec::rectangle(double lx) {
    DomainSpec d{DomainKind::BoundedRectangle, lx};
    d.validate();
    return d;
}

DomainSpec DomainSpec::strip(double period) {
    DomainSpec d{DomainKind::PeriodicStrip, period};
    d.validate();
    return d;
}

int DomainSpec::period() const {
    if (!periodic())
        throw DomainError("period() is only defined for the periodic strip");
    return static_cast<int>(x_extent);
}

void DomainSpec::validate() const {
    if (!(x_extent > 0.0) || !std::isfinite(x_extent))
        throw DomainError("domain x-extent must be positive and finite");
    if (periodic()) {
        if (x_extent != std::floor(x_extent))
            throw DomainError("strip period must be an integer, got " + std::to_string(x_extent));
        if (x_extent < 8.0)
            throw DomainError("strip period must be at least 8");
    }
}

GridSpec make_grid(const DomainSpec& domain, int nx, int nz) {
    domain.validate();
    if (nx < 8 || nz < 8) {
        std::ostringstream msg;
        msg << "grid needs nx, nz >= 8 (got " << nx << " x " << nz << ")";
        throw DomainError(msg.str());
    }
    GridSpec g;
    g.domain = domain;
    g.nx = nx;
    g.nz = nz;
    g.hx = domain.x_extent / nx;
    g.hz = 1.0 / nz;
    return g;
}

const char* to_string(Staggering s) {
    switch (s) {
        case Staggering::Center: return "center";
        case Staggering::XFace: return "x-face";
        case Staggering::ZFace: return "z-face";
        case Staggering::FlowMap: return "flow-map";
    }
    return "?";
}

int x_samples(const GridSpec& g, Staggering s) {
    if (s == Staggering::XFace && !g.domain.periodic()) return g.nx + 1;
    return g.nx;
}

int z_samples(const GridSpec& g, Staggering s) {
    return s == Staggering::ZFace ? g.nz + 1 : g.nz;
}

ScalarField::ScalarField(const GridSpec& grid, Staggering stag)
    : grid_(grid), stag_(stag), nxs_(x_samples(grid, stag)), nzs_(z_samples(grid, stag)),
      values_(static_cast<std::size_t>(nxs_) * static_cast<std::size_t>(nzs_), 0.0) {}

ScalarField::ScalarField(const GridSpec& grid, Staggering stag, std::vector<double> values)
    : grid_(grid), stag_(stag), nxs_(x_samples(grid, stag)), nzs_(z_samples(grid, stag)),
      values_(std::move(values)) {
    const std::size_t expected = static_cast<std::size_t>(nxs_) * static_cast<std::size_t>(nzs_);
    if (values_.size() != expected) {
        std::ostringstream msg;
        msg << "ScalarField (" << to_string(stag) << ") expects " << expected << " samples, got "
            << values_.size();
        throw DomainError(msg.str());
    }
    if (!all_finite())
        throw DomainError("ScalarField contains non-finite samples");
}

Vec2 ScalarField::position(int i, int k) const {
    const double x_off = stag_ == Staggering::XFace ? 0.0 : 0.5;
    const double z_off = stag_ == Staggering::ZFace ? 0.0 : 0.5;
    return {(i + x_off) * grid_.hx, (k + z_off) * grid_.hz};
}

double ScalarField::min() const {
    return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

VelocityField::VelocityField(const GridSpec& grid)
    : u1(grid, Staggering::XFace), u2(grid, Staggering::ZFace) {}

VelocityField::VelocityField(ScalarField a, ScalarField b) : u1(std::move(a)), u2(std::move(b)) {
    if (u1.staggering() != Staggering::XFace || u2.staggering() != Staggering::ZFace)
        throw DomainError("VelocityField needs u1 on x-faces and u2 on z-faces");
    if (!(u1.grid() == u2.grid()))
        throw DomainError("VelocityField components live on different grids");
}

ScalarField divergence(const VelocityField& u) {
    const GridSpec& g = u.grid();
    ScalarField d(g, Staggering::Center);
    const bool per = g.domain.periodic();
    for (int i = 0; i < g.nx; ++i) {
        const int ip = per ? (i + 1) % g.nx : i + 1;
        for (int k = 0; k < g.nz; ++k)
            d(i, k) = (u.u1(ip, k) - u.u1(i, k)) / g.hx + (u.u2(i, k + 1) - u.u2(i, k)) / g.hz;
    }
    return d;
}

double max_divergence(const VelocityField& u) {
    const ScalarField d = divergence(u);
    double m = 0.0;
    for (double v : d.values()) m = std::max(m, std::abs(v));
    return m;
}

bool no_slip_exact(const VelocityField& u) {
    const GridSpec& g = u.grid();
    for (int i = 0; i < g.nx; ++i)
        if (u.u2(i, 0) != 0.0 || u.u2(i, g.nz) != 0.0) return false;
    if (!g.domain.periodic())
        for (int k = 0; k < g.nz; ++k)
            if (u.u1(0, k) != 0.0 || u.u1(g.nx, k) != 0.0) return false;
    return true;
}

void check_velocity_invariants(const VelocityField& u, double div_tol) {
    if (!no_slip_exact(u))
        throw DomainError("velocity wall samples are not exact zeros");
    const double d = max_divergence(u);
    if (d > div_tol) {
        std::ostringstream msg;
        msg << "velocity divergence " << d << " exceeds tolerance " << div_tol;
        throw DomainError(msg.str());
    }
}

double wrap_x(const DomainSpec& d, double x) {
    if (!d.periodic()) return x;
    double r = std::fmod(x, d.x_extent);
    if (r < 0.0) r += d.x_extent;
    if (r >= d.x_extent) r = 0.0;  // -tiny + L rounds up to L
    return r;
}

namespace {

// Linear interpolation stencil along one axis; an index of -1 stands for a
// wall node whose value is zero.
struct Lerp1 {
    int lo;
    int hi;
    double w;
};

// Samples at j*h, j = 0..n (bounded) or j = 0..n-1 (periodic).
Lerp1 nodal(double c, double h, int n, bool periodic) {
    double s = c / h;
    if (periodic) {
        int i0 = static_cast<int>(std::floor(s));
        double w = s - i0;
        i0 %= n;
        if (i0 < 0) i0 += n;
        return {i0, (i0 + 1) % n, w};
    }
    s = std::clamp(s, 0.0, static_cast<double>(n));
    int i0 = std::min(static_cast<int>(std::floor(s)), n - 1);
    return {i0, i0 + 1, s - i0};
}

// Samples at (j + 1/2) h, j = 0..n-1, with zero-valued wall nodes at 0 and n h.
Lerp1 centered_walls(double c, double h, int n) {
    const double s = c / h - 0.5;
    if (s < 0.0) return {-1, 0, std::clamp(c / (0.5 * h), 0.0, 1.0)};
    if (s > n - 1) return {n - 1, -1, std::clamp((c - (n - 0.5) * h) / (0.5 * h), 0.0, 1.0)};
    int i0 = std::min(static_cast<int>(std::floor(s)), n - 2);
    return {i0, i0 + 1, s - i0};
}

// Samples at (j + 1/2) h, periodic.
Lerp1 centered_periodic(double c, double h, int n) {
    const double s = c / h - 0.5;
    int i0 = static_cast<int>(std::floor(s));
    const double w = s - i0;
    i0 %= n;
    if (i0 < 0) i0 += n;
    return {i0, (i0 + 1) % n, w};
}

double hull_lerp(double a, double b, double w) {
    const double v = (1.0 - w) * a + w * b;
    return std::clamp(v, std::min(a, b), std::max(a, b));
}

double bilinear(const ScalarField& f, const Lerp1& lx, const Lerp1& lz) {
    auto at = [&](int i, int k) { return (i < 0 || k < 0) ? 0.0 : f(i, k); };
    const double lo = hull_lerp(at(lx.lo, lz.lo), at(lx.hi, lz.lo), lx.w);
    const double hi = hull_lerp(at(lx.lo, lz.hi), at(lx.hi, lz.hi), lx.w);
    return hull_lerp(lo, hi, lz.w);
}

}  // namespace

Vec2 interpolate_velocity(const VelocityField& u, Vec2 p) {
    const GridSpec& g = u.grid();
    const DomainSpec& d = g.domain;
    if (!(p.z >= 0.0 && p.z <= 1.0))
        throw DomainError("interpolation point outside 0 <= z <= 1");
    double x = p.x;
    if (d.periodic()) {
        x = wrap_x(d, x);
    } else if (!(x >= 0.0 && x <= d.x_extent)) {
        throw DomainError("interpolation point outside the rectangle");
    }
    const bool per = d.periodic();
    const Lerp1 x1 = nodal(x, g.hx, g.nx, per);
    const Lerp1 z1 = centered_walls(p.z, g.hz, g.nz);
    const Lerp1 x2 = per ? centered_periodic(x, g.hx, g.nx) : centered_walls(x, g.hx, g.nx);
    const Lerp1 z2 = nodal(p.z, g.hz, g.nz, false);
    return {bilinear(u.u1, x1, z1), bilinear(u.u2, x2, z2)};
}

double interpolate_center_index(const ScalarField& f, double si, double sk) {
    const GridSpec& g = f.grid();
    Lerp1 lx;
    if (g.domain.periodic()) {
        int i0 = static_cast<int>(std::floor(si));
        const double w = si - i0;
        i0 %= g.nx;
        if (i0 < 0) i0 += g.nx;
        lx = {i0, (i0 + 1) % g.nx, w};
    } else {
        si = std::clamp(si, 0.0, static_cast<double>(g.nx - 1));
        const int i0 = std::min(static_cast<int>(std::floor(si)), g.nx - 2);
        lx = {i0, i0 + 1, si - i0};
    }
    sk = std::clamp(sk, 0.0, static_cast<double>(g.nz - 1));
    const int k0 = std::min(static_cast<int>(std::floor(sk)), g.nz - 2);
    const Lerp1 lz{k0, k0 + 1, sk - k0};
    return bilinear(f, lx, lz);
}

ScalarField shift_x(const ScalarField& f, int cells) {
    if (!f.domain().periodic())
        throw DomainError("shift_x requires the periodic strip");
    ScalarField out(f.grid(), f.staggering());
    const int n = f.nx_samples();
    for (int i = 0; i < n; ++i) {
        const int src = ((i - cells) % n + n) % n;
        for (int k = 0; k < f.nz_samples(); ++k) out(i, k) = f(src, k);
    }
    return out;
}

VelocityField shift_x(const VelocityField& u, int cells) {
    return {shift_x(u.u1, cells), shift_x(u.u2, cells)};
}

namespace {
void require_same_layout(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid()) || a.staggering() != b.staggering())
        throw DomainError("field arithmetic on mismatched layouts");
}
}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    require_same_layout(a, b);
    ScalarField r = a;
    auto rv = r.values();
    auto bv = b.values();
    for (std::size_t n = 0; n < rv.size(); ++n) rv[n] += bv[n];
    return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    require_same_layout(a, b);
    ScalarField r = a;
    auto rv = r.values();
    auto bv = b.values();
    for (std::size_t n = 0; n < rv.size(); ++n) rv[n] -= bv[n];
    return r;
}

ScalarField operator*(double c, const ScalarField& a) {
    ScalarField r = a;
    for (double& v : r.values()) v *= c;
    return r;
}

VelocityField operator+(const VelocityField& a, const VelocityField& b) { return {a.u1 + b.u1, a.u2 + b.u2}; }
VelocityField operator-(const VelocityField& a, const VelocityField& b) { return {a.u1 - b.u1, a.u2 - b.u2}; }
VelocityField operator*(double c, const VelocityField& a) { return {c * a.u1, c * a.u2}; }

}  // namespace stt
