#pragma once

// Computational domains, MAC grids and staggered field containers.
//
// Layout: cells (i, k) with i along x and k along z, cell centers at
// ((i + 1/2) hx, (k + 1/2) hz). Density and pressure live at centers, u1 on
// x-faces (x = i hx), u2 on z-faces (z = k hz). Samples are stored with z as
// the fast index: value(i, k) = values[i * nz_samples + k].

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stt {

class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class DomainKind : std::uint32_t { BoundedRectangle = 0, PeriodicStrip = 1 };

/// Bounded rectangle [0, Lx] x (0, 1), or one period [0, L) of the strip
/// R x (0, 1) with integer L >= 8.
struct DomainSpec {
    DomainKind kind = DomainKind::BoundedRectangle;
    double x_extent = 1.0;

    static DomainSpec rectangle(double lx);
    static DomainSpec strip(double period);

    bool periodic() const { return kind == DomainKind::PeriodicStrip; }
    int period() const;  // strip only
    void validate() const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

struct GridSpec {
    DomainSpec domain;
    int nx = 0;
    int nz = 0;
    double hx = 0.0;
    double hz = 0.0;

    double cell_area() const { return hx * hz; }
    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

GridSpec make_grid(const DomainSpec& domain, int nx, int nz);

enum class Staggering : std::uint32_t { Center = 0, XFace = 1, ZFace = 2, FlowMap = 3 };

const char* to_string(Staggering s);

/// Sample counts along x and z for a staggering on a grid. FlowMap uses the
/// center layout (two interleaved channels are handled by the serializer).
int x_samples(const GridSpec& g, Staggering s);
int z_samples(const GridSpec& g, Staggering s);

struct Vec2 {
    double x = 0.0;
    double z = 0.0;
};

/// Real samples of one scalar on a MAC grid.
class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(const GridSpec& grid, Staggering stag);  // zero-filled
    ScalarField(const GridSpec& grid, Staggering stag, std::vector<double> values);

    const GridSpec& grid() const { return grid_; }
    const DomainSpec& domain() const { return grid_.domain; }
    Staggering staggering() const { return stag_; }
    int nx_samples() const { return nxs_; }
    int nz_samples() const { return nzs_; }
    std::size_t size() const { return values_.size(); }

    double operator()(int i, int k) const { return values_[index(i, k)]; }
    double& operator()(int i, int k) { return values_[index(i, k)]; }
    std::size_t index(int i, int k) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(nzs_) + static_cast<std::size_t>(k);
    }

    std::span<const double> values() const { return values_; }
    std::span<double> values() { return values_; }

    /// Physical position of sample (i, k).
    Vec2 position(int i, int k) const;

    double min() const;
    double max() const;
    bool all_finite() const;

  private:
    GridSpec grid_{};
    Staggering stag_ = Staggering::Center;
    int nxs_ = 0;
    int nzs_ = 0;
    std::vector<double> values_;
};

/// Staggered vector field: u1 on x-faces, u2 on z-faces. Also used for
/// face-located forcing, which need not satisfy the velocity invariants.
struct VelocityField {
    ScalarField u1;
    ScalarField u2;

    VelocityField() = default;
    explicit VelocityField(const GridSpec& grid);
    VelocityField(ScalarField a, ScalarField b);

    const GridSpec& grid() const { return u1.grid(); }
    const DomainSpec& domain() const { return u1.domain(); }
};

/// Discrete divergence at cell centers (face-difference stencil).
ScalarField divergence(const VelocityField& u);

/// max |div u| over cells.
double max_divergence(const VelocityField& u);

/// True when the stored wall rows/columns are exact zeros.
bool no_slip_exact(const VelocityField& u);

/// Throws DomainError unless the wall samples are exact zeros and
/// max |div u| <= div_tol.
void check_velocity_invariants(const VelocityField& u, double div_tol);

/// Build a field by sampling fn(x, z) at sample positions.
template <class Fn>
ScalarField sample(const GridSpec& grid, Staggering stag, Fn&& fn) {
    ScalarField f(grid, stag);
    for (int i = 0; i < f.nx_samples(); ++i)
        for (int k = 0; k < f.nz_samples(); ++k) {
            const Vec2 p = f.position(i, k);
            f(i, k) = fn(p.x, p.z);
        }
    return f;
}

/// Samples a vector function onto the MAC faces; wall samples are forced to
/// exact zero afterwards.
template <class Fn1, class Fn2>
VelocityField sample_velocity(const GridSpec& grid, Fn1&& fn1, Fn2&& fn2) {
    VelocityField u(sample(grid, Staggering::XFace, fn1), sample(grid, Staggering::ZFace, fn2));
    for (int i = 0; i < u.u2.nx_samples(); ++i) {
        u.u2(i, 0) = 0.0;
        u.u2(i, grid.nz) = 0.0;
    }
    if (!grid.domain.periodic()) {
        for (int k = 0; k < grid.nz; ++k) {
            u.u1(0, k) = 0.0;
            u.u1(grid.nx, k) = 0.0;
        }
    }
    return u;
}

/// Wraps x into [0, L) for the strip; identity for the rectangle.
double wrap_x(const DomainSpec& d, double x);

/// Bilinear interpolation of both staggered components at (x, z), using the
/// no-slip wall values as interpolation nodes. Returns exactly (., 0) on the
/// walls z = 0 and z = 1. Throws DomainError for points outside the closed
/// rectangle.
Vec2 interpolate_velocity(const VelocityField& u, Vec2 point);

/// Bilinear interpolation of a cell-centered field at fractional index
/// coordinates (si, sk), where integer values hit cell centers exactly.
/// Out-of-range coordinates are clamped (rectangle, z) or wrapped (strip, x).
/// The result always lies in the hull of the stencil values.
double interpolate_center_index(const ScalarField& f, double si, double sk);

/// Translate a field on the strip by `cells` cells in +x (periodic).
ScalarField shift_x(const ScalarField& f, int cells);
VelocityField shift_x(const VelocityField& u, int cells);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double c, const ScalarField& a);
VelocityField operator+(const VelocityField& a, const VelocityField& b);
VelocityField operator-(const VelocityField& a, const VelocityField& b);
VelocityField operator*(double c, const VelocityField& a);

}  // namespace stt
