// Rectangle Stokes solver: monolithic MAC saddle-point system
//
//   [ A  G ] [u]   [f]
//   [ D  0 ] [p] = [g]
//
// A is -Lap_h on interior faces, G the pressure gradient, D the divergence.
// The continuity row of cell (0, 0) is redundant (the divergences of a
// no-slip field sum to zero) and is replaced by p(0, 0) = 0; the mean is
// removed afterwards. A mean-zero multiplier row would be dense and ruins
// the fill-reducing ordering. One sparse LU per grid is cached and shared
// read-only; accuracy is brought to tolerance by iterative refinement on the
// physical residual.

#include <Eigen/OrderingMethods>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

#include "stt/mac_stencil.hpp"
#include "stt/stokes.hpp"

namespace stt {

namespace {

using SpMat = Eigen::SparseMatrix<double>;
using Vec = Eigen::VectorXd;

struct RectFactor {
    GridSpec grid;
    int n1 = 0, n2 = 0, np = 0;
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;

    int u1(int i, int k) const { return (i - 1) * grid.nz + k; }
    int u2(int i, int k) const { return n1 + i * (grid.nz - 1) + (k - 1); }
    int p(int i, int k) const { return n1 + n2 + i * grid.nz + k; }
    int size() const { return n1 + n2 + np; }
};

std::shared_ptr<const RectFactor> build_rect_factor(const GridSpec& g) {
    auto F = std::make_shared<RectFactor>();
    F->grid = g;
    F->n1 = (g.nx - 1) * g.nz;
    F->n2 = g.nx * (g.nz - 1);
    F->np = g.nx * g.nz;
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<std::size_t>(F->size()) * 9);
    for (int i = 1; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const int row = F->u1(i, k);
            mac::u1_laplacian(g, i, k, [&](int a, int b, double c) { t.emplace_back(row, F->u1(a, b), c); });
            mac::u1_gradient(g, i, k, [&](int a, int b, double c) { t.emplace_back(row, F->p(a, b), c); });
        }
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) {
            const int row = F->u2(i, k);
            mac::u2_laplacian(g, i, k, [&](int a, int b, double c) { t.emplace_back(row, F->u2(a, b), c); });
            mac::u2_gradient(g, i, k, [&](int a, int b, double c) { t.emplace_back(row, F->p(a, b), c); });
        }
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) {
            const int row = F->p(i, k);
            if (i == 0 && k == 0) {
                t.emplace_back(row, row, 1.0);
                continue;
            }
            if (i + 1 < g.nx) t.emplace_back(row, F->u1(i + 1, k), 1.0 / g.hx);
            if (i > 0) t.emplace_back(row, F->u1(i, k), -1.0 / g.hx);
            if (k + 1 < g.nz) t.emplace_back(row, F->u2(i, k + 1), 1.0 / g.hz);
            if (k > 0) t.emplace_back(row, F->u2(i, k), -1.0 / g.hz);
        }
    SpMat A(F->size(), F->size());
    A.setFromTriplets(t.begin(), t.end());
    A.makeCompressed();
    F->lu.analyzePattern(A);
    F->lu.factorize(A);
    if (F->lu.info() != Eigen::Success)
        throw SolverError("sparse LU factorization of the Stokes system failed: " + F->lu.lastErrorMessage(), NAN);
    return F;
}

using GridKey = std::tuple<int, int, double, double>;
std::mutex g_rect_mutex;
std::map<GridKey, std::shared_ptr<const RectFactor>> g_rect_cache;

std::shared_ptr<const RectFactor> rect_factor(const GridSpec& g) {
    const GridKey key{g.nx, g.nz, g.hx, g.hz};
    std::lock_guard lock(g_rect_mutex);
    auto it = g_rect_cache.find(key);
    if (it != g_rect_cache.end()) return it->second;
    auto F = build_rect_factor(g);
    g_rect_cache.emplace(key, F);
    return F;
}

// One linear solve: returns (u, p) for face forcing f and cell source g.
void rect_apply_inverse(const RectFactor& F, const VelocityField& f, const ScalarField& src, VelocityField& u,
                        ScalarField& p) {
    const GridSpec& g = F.grid;
    Vec b = Vec::Zero(F.size());
    for (int i = 1; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) b[F.u1(i, k)] = f.u1(i, k);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) b[F.u2(i, k)] = f.u2(i, k);
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) b[F.p(i, k)] = src(i, k);
    b[F.p(0, 0)] = 0.0;
    const Vec x = F.lu.solve(b);
    u = VelocityField(g);
    p = ScalarField(g, Staggering::Center);
    for (int i = 1; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) u.u1(i, k) = x[F.u1(i, k)];
    for (int i = 0; i < g.nx; ++i)
        for (int k = 1; k < g.nz; ++k) u.u2(i, k) = x[F.u2(i, k)];
    for (int i = 0; i < g.nx; ++i)
        for (int k = 0; k < g.nz; ++k) p(i, k) = x[F.p(i, k)];
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

void remove_mean(ScalarField& p) {
    double mean = 0.0;
    for (double v : p.values()) mean += v;
    mean /= static_cast<double>(p.size());
    for (double& v : p.values()) v -= mean;
}

}  // namespace

namespace detail {
void clear_rect_cache() {
    std::lock_guard lock(g_rect_mutex);
    g_rect_cache.clear();
}
}  // namespace detail

StokesSolution solve_stokes_bounded(const VelocityField& f, const StokesConfig& cfg) {
    cfg.validate();
    const GridSpec& g = f.grid();
    if (g.domain.periodic()) throw DomainError("solve_stokes_bounded needs a rectangle domain");
    if (cfg.flux_target != 0.0) throw DomainError("a flux target only applies on the strip");
    if (!f.u1.all_finite() || !f.u2.all_finite()) throw DomainError("non-finite Stokes forcing");

    const auto F = rect_factor(g);
    const double scale = std::max({1.0, max_abs(f.u1.values()), max_abs(f.u2.values())});
    const double tol = cfg.linear_solver_tolerance * scale;

    StokesSolution s;
    ScalarField zero_src(g, Staggering::Center);
    rect_apply_inverse(*F, f, zero_src, s.u, s.p);
    int it = 1;
    double res = 0.0, div = 0.0;
    for (;; ++it) {
        const VelocityField r_mom = f - mac::apply_momentum(s.u, s.p, 0.0);
        const ScalarField r_div = -1.0 * divergence(s.u);
        res = momentum_residual(s.u, s.p, f);
        div = max_abs(r_div.values());
        if ((res <= tol && div <= tol) || it >= cfg.max_iterations) break;
        VelocityField du;
        ScalarField dp;
        rect_apply_inverse(*F, r_mom, r_div, du, dp);
        s.u = s.u + du;
        s.p = s.p + dp;
    }
    remove_mean(s.p);
    s.residual_norm = momentum_residual(s.u, s.p, f);
    s.stats.iterations = it;
    s.stats.residual = s.residual_norm;
    s.stats.divergence = max_divergence(s.u);
    s.stats.tolerance = tol;
    const auto prof = flux_profile(s.u);
    double mean_flux = 0.0;
    for (double v : prof) mean_flux += v;
    s.flux = mean_flux / static_cast<double>(prof.size());
    if (s.residual_norm > tol || s.stats.divergence > tol) {
        std::ostringstream msg;
        msg << "rectangle Stokes solve did not reach tolerance " << tol << " in " << it
            << " refinement sweeps (residual " << s.residual_norm << ", divergence " << s.stats.divergence << ")";
        throw SolverError(msg.str(), std::max(s.residual_norm, s.stats.divergence));
    }
    return s;
}

}  // namespace stt
