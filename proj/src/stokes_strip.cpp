// Strip Stokes solver: discrete Fourier transform in x.
//
// Every wavenumber m decouples into a 1D saddle system in z for the
// transformed (u1, u2, p). For m != 0 the x-gradient symbol is non-zero and
// the system is regular. The m = 0 block is singular along the Poiseuille
// mode and along constant pressure; it is closed by the flux constraint
// (multiplier = mean pressure slope) and a zero-mean pressure condition.
//
// Transforms use F_m = sum_i f_i exp(-2 pi i m i / nx); real data only needs
// m = 0..nx/2, the rest follows by conjugate symmetry.

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "stt/mac_stencil.hpp"
#include "stt/stokes.hpp"

namespace stt {

namespace {

using cplx = std::complex<double>;
using SpMatC = Eigen::SparseMatrix<cplx>;
using VecC = Eigen::VectorXcd;

struct ModeLayout {
    int nz;
    bool zero_mode;
    int u1(int k) const { return 3 * k; }
    int p(int k) const { return 3 * k + 1; }
    int u2(int k) const { return 3 * (k - 1) + 2; }  // k = 1..nz-1
    int slope() const { return 3 * nz - 1; }
    int mean() const { return 3 * nz; }
    int size() const { return zero_mode ? 3 * nz + 1 : 3 * nz - 1; }
};

struct StripFactor {
    GridSpec grid;
    int modes = 0;                // nx/2 + 1
    std::vector<cplx> twiddle;    // exp(-2 pi i j / nx), j = 0..nx-1
    std::vector<std::unique_ptr<Eigen::SparseLU<SpMatC, Eigen::COLAMDOrdering<int>>>> lu;
};

// Offset of a periodic neighbour index relative to i, in {-1, 0, 1}.
int x_offset(int a, int i, int nx) {
    int d = a - i;
    if (d > 1) d -= nx;
    if (d < -1) d += nx;
    return d;
}

std::shared_ptr<const StripFactor> build_strip_factor(const GridSpec& g) {
    auto F = std::make_shared<StripFactor>();
    F->grid = g;
    F->modes = g.nx / 2 + 1;
    F->twiddle.resize(static_cast<std::size_t>(g.nx));
    for (int j = 0; j < g.nx; ++j) {
        const double a = -2.0 * std::numbers::pi * j / g.nx;
        F->twiddle[static_cast<std::size_t>(j)] = {std::cos(a), std::sin(a)};
    }
    F->lu.resize(static_cast<std::size_t>(F->modes));
    std::vector<std::string> errors(static_cast<std::size_t>(F->modes));

#pragma omp parallel for schedule(static)
    for (int m = 0; m < F->modes; ++m) {
        const ModeLayout L{g.nz, m == 0};
        // exp(i theta d) for d in {-1, 0, 1}
        const cplx ep = std::conj(F->twiddle[static_cast<std::size_t>(m % g.nx)]);
        auto phase = [&](int d) { return d == 0 ? cplx(1.0) : (d > 0 ? ep : std::conj(ep)); };
        std::vector<Eigen::Triplet<cplx>> t;
        for (int k = 0; k < g.nz; ++k) {
            const int row = L.u1(k);
            mac::u1_laplacian(g, 0, k, [&](int a, int b, double c) {
                t.emplace_back(row, L.u1(b), c * phase(x_offset(a, 0, g.nx)));
            });
            mac::u1_gradient(g, 0, k, [&](int a, int, double c) {
                t.emplace_back(row, L.p(k), c * phase(x_offset(a, 0, g.nx)));
            });
            if (L.zero_mode) t.emplace_back(row, L.slope(), 1.0);
        }
        for (int k = 1; k < g.nz; ++k) {
            const int row = L.u2(k);
            mac::u2_laplacian(g, 0, k, [&](int a, int b, double c) {
                t.emplace_back(row, L.u2(b), c * phase(x_offset(a, 0, g.nx)));
            });
            mac::u2_gradient(g, 0, k, [&](int, int b, double c) { t.emplace_back(row, L.p(b), c); });
        }
        for (int k = 0; k < g.nz; ++k) {
            const int row = L.p(k);
            // (u1(i+1) - u1(i)) / hx
            t.emplace_back(row, L.u1(k), (ep - 1.0) / g.hx);
            if (k + 1 < g.nz) t.emplace_back(row, L.u2(k + 1), 1.0 / g.hz);
            if (k > 0) t.emplace_back(row, L.u2(k), -1.0 / g.hz);
            if (L.zero_mode) {
                t.emplace_back(row, L.mean(), 1.0);
                t.emplace_back(L.mean(), row, 1.0);
            }
        }
        if (L.zero_mode)
            for (int k = 0; k < g.nz; ++k) t.emplace_back(L.slope(), L.u1(k), g.hz);

        SpMatC A(L.size(), L.size());
        A.setFromTriplets(t.begin(), t.end());
        A.makeCompressed();
        auto lu = std::make_unique<Eigen::SparseLU<SpMatC, Eigen::COLAMDOrdering<int>>>();
        lu->analyzePattern(A);
        lu->factorize(A);
        if (lu->info() != Eigen::Success) errors[static_cast<std::size_t>(m)] = lu->lastErrorMessage();
        F->lu[static_cast<std::size_t>(m)] = std::move(lu);
    }
    for (std::size_t m = 0; m < errors.size(); ++m)
        if (!errors[m].empty())
            throw SolverError("strip Stokes factorization failed for mode " + std::to_string(m) + ": " + errors[m],
                              NAN);
    return F;
}

using GridKey = std::tuple<int, int, double, double>;
std::mutex g_strip_mutex;
std::map<GridKey, std::shared_ptr<const StripFactor>> g_strip_cache;

std::shared_ptr<const StripFactor> strip_factor(const GridSpec& g) {
    const GridKey key{g.nx, g.nz, g.hx, g.hz};
    std::lock_guard lock(g_strip_mutex);
    auto it = g_strip_cache.find(key);
    if (it != g_strip_cache.end()) return it->second;
    auto F = build_strip_factor(g);
    g_strip_cache.emplace(key, F);
    return F;
}

// Forward DFT in x of column k of a field, for modes 0..modes-1.
cplx dft(const StripFactor& F, const ScalarField& f, int m, int k) {
    const int nx = F.grid.nx;
    cplx acc = 0.0;
    for (int i = 0; i < nx; ++i) acc += f(i, k) * F.twiddle[static_cast<std::size_t>((m * i) % nx)];
    return acc;
}

// Real inverse DFT of half-spectrum coefficients c[m], m = 0..nx/2.
double idft(const StripFactor& F, const std::vector<cplx>& c, int i) {
    const int nx = F.grid.nx;
    double acc = c[0].real();
    for (int m = 1; m < F.modes; ++m) {
        const cplx w = std::conj(F.twiddle[static_cast<std::size_t>((m * i) % nx)]);
        const double term = (c[static_cast<std::size_t>(m)] * w).real();
        acc += (2 * m == nx) ? term : 2.0 * term;
    }
    return acc / nx;
}

struct StripIterate {
    VelocityField u;
    ScalarField p;
    double slope = 0.0;
};

// Applies the inverse of the strip operator to (face forcing, cell source,
// flux target).
StripIterate strip_apply_inverse(const StripFactor& F, const VelocityField& f, const ScalarField& src, double flux) {
    const GridSpec& g = F.grid;
    const int nz = g.nz;
    std::vector<VecC> sol(static_cast<std::size_t>(F.modes));

#pragma omp parallel for schedule(static)
    for (int m = 0; m < F.modes; ++m) {
        const ModeLayout L{nz, m == 0};
        VecC b = VecC::Zero(L.size());
        for (int k = 0; k < nz; ++k) {
            b[L.u1(k)] = dft(F, f.u1, m, k);
            b[L.p(k)] = dft(F, src, m, k);
        }
        for (int k = 1; k < nz; ++k) b[L.u2(k)] = dft(F, f.u2, m, k);
        if (L.zero_mode) b[L.slope()] = flux * g.nx;
        sol[static_cast<std::size_t>(m)] = F.lu[static_cast<std::size_t>(m)]->solve(b);
    }

    StripIterate out{VelocityField(g), ScalarField(g, Staggering::Center), 0.0};
    out.slope = sol[0][ModeLayout{nz, true}.slope()].real() / g.nx;
    std::vector<cplx> c(static_cast<std::size_t>(F.modes));
    auto gather = [&](auto index_of, int k) {
        for (int m = 0; m < F.modes; ++m) c[static_cast<std::size_t>(m)] = sol[static_cast<std::size_t>(m)][index_of(ModeLayout{nz, m == 0}, k)];
    };
    for (int k = 0; k < nz; ++k) {
        gather([](const ModeLayout& L, int kk) { return L.u1(kk); }, k);
        for (int i = 0; i < g.nx; ++i) out.u.u1(i, k) = idft(F, c, i);
        gather([](const ModeLayout& L, int kk) { return L.p(kk); }, k);
        for (int i = 0; i < g.nx; ++i) out.p(i, k) = idft(F, c, i);
    }
    for (int k = 1; k < nz; ++k) {
        gather([](const ModeLayout& L, int kk) { return L.u2(kk); }, k);
        for (int i = 0; i < g.nx; ++i) out.u.u2(i, k) = idft(F, c, i);
    }
    return out;
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double mean_flux(const VelocityField& u) {
    const auto prof = flux_profile(u);
    double acc = 0.0;
    for (double v : prof) acc += v;
    return acc / static_cast<double>(prof.size());
}

}  // namespace

namespace detail {
void clear_strip_cache() {
    std::lock_guard lock(g_strip_mutex);
    g_strip_cache.clear();
}
}  // namespace detail

StokesSolution solve_stokes_strip(const VelocityField& f, const StokesConfig& cfg) {
    cfg.validate();
    const GridSpec& g = f.grid();
    if (!g.domain.periodic()) throw DomainError("solve_stokes_strip needs the periodic strip");
    if (!f.u1.all_finite() || !f.u2.all_finite()) throw DomainError("non-finite Stokes forcing");

    const auto F = strip_factor(g);
    const double scale =
        std::max({1.0, max_abs(f.u1.values()), max_abs(f.u2.values()), std::abs(cfg.flux_target)});
    const double tol = cfg.linear_solver_tolerance * scale;

    const ScalarField zero_src(g, Staggering::Center);
    StripIterate x = strip_apply_inverse(*F, f, zero_src, cfg.flux_target);
    int it = 1;
    double res = 0.0, div = 0.0, ferr = 0.0;
    for (;; ++it) {
        res = momentum_residual(x.u, x.p, f, x.slope);
        div = max_divergence(x.u);
        ferr = std::abs(cfg.flux_target - mean_flux(x.u));
        if ((res <= tol && div <= tol && ferr <= tol) || it >= cfg.max_iterations) break;
        const VelocityField r_mom = f - mac::apply_momentum(x.u, x.p, x.slope);
        const ScalarField r_div = -1.0 * divergence(x.u);
        const StripIterate dx = strip_apply_inverse(*F, r_mom, r_div, cfg.flux_target - mean_flux(x.u));
        x.u = x.u + dx.u;
        x.p = x.p + dx.p;
        x.slope += dx.slope;
    }
    double pm = 0.0;
    for (double v : x.p.values()) pm += v;
    pm /= static_cast<double>(x.p.size());
    for (double& v : x.p.values()) v -= pm;

    StokesSolution s;
    s.u = std::move(x.u);
    s.p = std::move(x.p);
    s.pressure_slope = x.slope;
    s.residual_norm = momentum_residual(s.u, s.p, f, s.pressure_slope);
    s.flux = mean_flux(s.u);
    s.stats.iterations = it;
    s.stats.residual = s.residual_norm;
    s.stats.divergence = max_divergence(s.u);
    s.stats.flux_error = std::abs(s.flux - cfg.flux_target);
    s.stats.tolerance = tol;
    if (s.residual_norm > tol || s.stats.divergence > tol || s.stats.flux_error > tol) {
        std::ostringstream msg;
        msg << "strip Stokes solve did not reach tolerance " << tol << " in " << it << " refinement sweeps (residual "
            << s.residual_norm << ", divergence " << s.stats.divergence << ", flux error " << s.stats.flux_error
            << ")";
        throw SolverError(msg.str(), std::max({s.residual_norm, s.stats.divergence, s.stats.flux_error}));
    }
    return s;
}

}  // namespace stt
